#ifndef G1M_MODULI_HPP
#define G1M_MODULI_HPP

#include <optional>
#include <string>
#include <vector>

#include "g1m/ideal.hpp"
#include "g1m/univariate.hpp"

namespace g1m {
namespace moduli {

// ---- variable naming -------------------------------------------------------

inline std::string cij_name(int i, int j) { return "c_" + std::to_string(i) + "_" + std::to_string(j); }
inline std::string dij_name(int i, int j) { return "d_" + std::to_string(i) + "_" + std::to_string(j); }
inline std::string ci_name(int i) { return "c_" + std::to_string(i); }
inline std::string cbi_name(int i) { return "cb_" + std::to_string(i); }

struct ModuliSpec {
    int n = 0;
    std::string coords;  // full | reduced | special | eliminated
    Ring ring;
    IdealPresentation ideal;

    Polynomial v(const std::string& name) const { return Polynomial::var(ring, name); }
    int idx(const std::string& name) const { return ring->var_index(name); }
};

// full coordinates: c_{ij} for 2<=i!=j<=n minus the normalization c_32 = c_i3 = 0,
// d_{ij} for i<j, (i,j) != (2,3), and a, b, c, d
inline bool full_cij_exists(int i, int j) {
    if (i == j || i < 2 || j < 2) return false;
    if (i == 3 && j == 2) return false;  // c_32 = 0
    if (j == 3) return false;            // c_i3 = 0
    return true;
}

inline Ring full_ring(int n, const Field& field) {
    std::vector<VarSpec> vars = {{"a", 1}, {"b", 2}, {"c", 2}, {"d", 3}};
    for (int i = 2; i <= n; ++i)
        for (int j = 2; j <= n; ++j)
            if (full_cij_exists(i, j)) vars.push_back({cij_name(i, j), 1});
    for (int i = 2; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!(i == 2 && j == 3)) vars.push_back({dij_name(i, j), 2});
    return make_ring(vars, field);
}

// c_{ij} in full coordinates as a polynomial (zero for the normalized slots)
inline Polynomial full_cij(const Ring& R, int i, int j) {
    if (!full_cij_exists(i, j)) return Polynomial::zero(R);
    return Polynomial::var(R, cij_name(i, j));
}

inline Polynomial full_dij(const Ring& R, int i, int j) {
    if (i > j) std::swap(i, j);
    return Polynomial::var(R, dij_name(i, j));
}

// The moduli ideal in full coordinates: the relation families that make
// 1, x_2^m x_3, x_i^m a basis of the curve algebra.
inline ModuliSpec u_n_full(int n, const Field& field = Field::rationals()) {
    require(n >= 3, "u_n_full needs n >= 3");
    ModuliSpec M;
    M.n = n;
    M.coords = "full";
    M.ring = full_ring(n, field);
    M.ideal = IdealPresentation(M.ring, "moduli relations, full coordinates");
    const Ring& R = M.ring;
    auto C = [&](int i, int j) { return full_cij(R, i, j); };
    auto D = [&](int i, int j) { return full_dij(R, i, j); };
    Polynomial a = Polynomial::var(R, "a"), b = Polynomial::var(R, "b");
    Polynomial c = Polynomial::var(R, "c"), d = Polynomial::var(R, "d");
    auto tag = [](const std::string& base, std::initializer_list<int> idx) {
        std::string s = base;
        for (int k : idx) s += "_" + std::to_string(k);
        return s;
    };
    for (int i = 4; i <= n; ++i) {
        M.ideal.add(tag("lin_a", {i}), a - C(3, i) + C(2, i) + C(i, 2));
        M.ideal.add(tag("lin_d2", {i}), D(2, i) + c);
        M.ideal.add(tag("q_d3", {i}), D(3, i) - b + C(3, i) * C(i, 2));
        M.ideal.add(tag("cub_d", {i}), d + C(3, i) * c + C(2, i) * D(3, i));
    }
    for (int i = 4; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) M.ideal.add(tag("lin_dij", {i, j}), D(i, j) + c);
    for (int i = 4; i <= n; ++i)
        for (int j = 4; j <= n; ++j) {
            if (i == j) continue;
            M.ideal.add(tag("lin_csum", {i, j}), C(i, j) + C(j, i) - C(3, i) - C(2, j) - C(j, 2));
            M.ideal.add(tag("q1", {i, j}),
                        C(j, i) * C(2, i) - C(3, i) * C(2, i) - C(j, 2) * C(2, i) - C(j, i) * C(2, j) - D(2, j));
        }
    for (int i = 4; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            M.ideal.add(tag("q2", {i, j}),
                        C(j, i) * C(i, 2) + C(i, j) * C(j, 2) - C(i, 2) * C(j, 2) - b - c);
    for (int k = 4; k <= n; ++k)
        for (int i = 4; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                if (i == k || j == k) continue;
                M.ideal.add(tag("tri", {i, j, k}),
                            C(i, k) * C(j, k) - C(i, j) * C(j, k) - C(j, i) * C(i, k) - C(3, k) * C(2, k) - D(i, j));
            }
    return M;
}

// ---- reduced coordinates ----------------------------------------------------

inline Ring reduced_ring(int n, const Field& field) {
    std::vector<VarSpec> vars = {{"a", 1}, {"c", 2}, {"cb", 2}};
    for (int i = 4; i <= n; ++i) {
        vars.push_back({ci_name(i), 1});
        vars.push_back({cbi_name(i), 1});
    }
    for (int i = 4; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) vars.push_back({cij_name(i, j), 1});
    return make_ring(vars, field);
}

// c_{ij} in reduced coordinates; for i > j this is the alias polynomial
// a + c_j + cb_j + c_i + cb_i - c_{ji}, never a ring variable
inline Polynomial reduced_cij(const Ring& R, int i, int j) {
    require(i >= 4 && j >= 4 && i != j, "reduced_cij wants indices >= 4");
    if (i < j) return Polynomial::var(R, cij_name(i, j));
    Polynomial s = Polynomial::var(R, "a");
    for (int k : {j, i}) s += Polynomial::var(R, ci_name(k)) + Polynomial::var(R, cbi_name(k));
    return s - Polynomial::var(R, cij_name(j, i));
}

// The defining relations on a, c, cb, c_i, cb_i, c_{ij}.
inline ModuliSpec u_n_reduced(int n, const Field& field = Field::rationals()) {
    require(n >= 4, "u_n_reduced needs n >= 4");
    ModuliSpec M;
    M.n = n;
    M.coords = "reduced";
    M.ring = reduced_ring(n, field);
    M.ideal = IdealPresentation(M.ring, "moduli relations, reduced coordinates");
    const Ring& R = M.ring;
    Polynomial a = Polynomial::var(R, "a");
    Polynomial c = Polynomial::var(R, "c"), cb = Polynomial::var(R, "cb");
    auto ci = [&](int i) { return Polynomial::var(R, ci_name(i)); };
    auto cbi = [&](int i) { return Polynomial::var(R, cbi_name(i)); };
    auto cij = [&](int i, int j) { return reduced_cij(R, i, j); };
    for (int i = 4; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            M.ideal.add("pair_c_" + std::to_string(i) + "_" + std::to_string(j),
                        (ci(j) - ci(i)) * cij(i, j) - (a + cbi(i) + ci(j) + cbi(j)) * ci(j) + c);
            M.ideal.add("pair_cb_" + std::to_string(i) + "_" + std::to_string(j),
                        (cbi(i) - cbi(j)) * cij(i, j) - (a + ci(i) + cbi(i) + ci(j)) * cbi(i) + cb);
        }
    for (int i = 4; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                M.ideal.add("tri_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k),
                            cij(i, j) * cij(j, k) + cij(j, i) * cij(i, k) - cij(i, k) * cij(j, k) +
                                (a + ci(k) + cbi(k)) * ci(k) - c);
    return M;
}

// free presentations for n <= 5
inline ModuliSpec u_n_special(int n, const Field& field = Field::rationals()) {
    require(n >= 1 && n <= 5, "u_n_special covers n = 1..5");
    ModuliSpec M;
    M.n = n;
    M.coords = "special";
    switch (n) {
        case 1: M.ring = make_ring({{"de", 4}, {"ep", 6}}, field); break;
        case 2: M.ring = make_ring({{"al", 2}, {"be", 3}, {"ga", 4}}, field); break;
        case 3: M.ring = make_ring({{"a", 1}, {"b", 2}, {"c", 2}, {"d", 3}}, field); break;
        case 4:
            M.ring = make_ring({{"a", 1}, {"c_4", 1}, {"cb_4", 1}, {"c", 2}, {"cb", 2}}, field);
            break;
        case 5:
            M.ring = make_ring({{"a", 1}, {"c_4", 1}, {"cb_4", 1}, {"c_5", 1}, {"cb_5", 1}, {"c_4_5", 1}}, field);
            break;
    }
    M.ideal = IdealPresentation(M.ring, "free presentation");
    return M;
}

// solve c and cb from the (4,5) pair of relations
inline std::pair<Polynomial, Polynomial> c_cb_elimination(const Ring& R) {
    Polynomial a = Polynomial::var(R, "a");
    Polynomial c4 = Polynomial::var(R, ci_name(4)), cb4 = Polynomial::var(R, cbi_name(4));
    Polynomial c5 = Polynomial::var(R, ci_name(5)), cb5 = Polynomial::var(R, cbi_name(5));
    Polynomial c45 = Polynomial::var(R, cij_name(4, 5));
    Polynomial c = (a + cb4 + c5 + cb5) * c5 - (c5 - c4) * c45;
    Polynomial cb = (a + c4 + cb4 + c5) * cb4 - (cb4 - cb5) * c45;
    return {c, cb};
}

// projective coordinate ideal: reduced relations with c, cb eliminated;
// empty for n = 5
inline ModuliSpec u_n_eliminated(int n, const Field& field = Field::rationals()) {
    require(n >= 5, "u_n_eliminated needs n >= 5");
    ModuliSpec red = u_n_reduced(n, field);
    ModuliSpec M;
    M.n = n;
    M.coords = "eliminated";
    std::vector<VarSpec> vars;
    for (const auto& v : red.ring->vars)
        if (v.name != "c" && v.name != "cb") vars.push_back(v);
    M.ring = make_ring(vars, field);
    auto [cimg, cbimg] = c_cb_elimination(M.ring);
    std::vector<Polynomial> images;
    for (const auto& v : red.ring->vars) {
        if (v.name == "c") images.push_back(cimg);
        else if (v.name == "cb") images.push_back(cbimg);
        else images.push_back(Polynomial::var(M.ring, v.name));
    }
    RingMap elim(red.ring, M.ring, images);
    M.ideal = IdealPresentation(M.ring, "reduced relations with c, cb eliminated");
    for (const auto& [name, g] : red.ideal.gens) {
        Polynomial img = elim.apply(g);
        if (!img.is_zero()) M.ideal.add(name, img);
    }
    return M;
}

// Eliminate b, d, d_{ij}, c_{3i}, c_{ji} from the full coordinates via the
// printed formulas; the images of the full relations generate the reduced ideal.
inline RingMap full_to_reduced_map(int n, const Field& field = Field::rationals()) {
    require(n >= 4, "full_to_reduced_map needs n >= 4");
    Ring F = full_ring(n, field);
    Ring R = reduced_ring(n, field);
    auto var = [&](const std::string& nm) { return Polynomial::var(R, nm); };
    Polynomial a = var("a"), c = var("c"), cb = var("cb");
    auto ci = [&](int i) { return var(ci_name(i)); };
    auto cbi = [&](int i) { return var(cbi_name(i)); };
    std::vector<Polynomial> images;
    for (const auto& v : F->vars) {
        const std::string& nm = v.name;
        if (nm == "a") images.push_back(a);
        else if (nm == "b") images.push_back(cb - c);
        else if (nm == "c") images.push_back(c);
        else if (nm == "d") {
            Polynomial c34 = a + ci(4) + cbi(4);
            images.push_back(c34 * ci(4) * cbi(4) - cb * ci(4) - c * cbi(4) - a * c);
        } else if (nm[0] == 'c') {
            auto p1 = nm.find('_'), p2 = nm.find('_', p1 + 1);
            int i = std::stoi(nm.substr(p1 + 1, p2 - p1 - 1));
            int j = std::stoi(nm.substr(p2 + 1));
            if (i == 2) images.push_back(ci(j));
            else if (j == 2) images.push_back(cbi(i));
            else if (i == 3) images.push_back(a + ci(j) + cbi(j));
            else images.push_back(reduced_cij(R, i, j));
        } else {  // d_{ij}
            auto p1 = nm.find('_'), p2 = nm.find('_', p1 + 1);
            int i = std::stoi(nm.substr(p1 + 1, p2 - p1 - 1));
            int j = std::stoi(nm.substr(p2 + 1));
            if (i == 2) images.push_back(-c);
            else if (i == 3) images.push_back((cb - c) - (a + ci(j) + cbi(j)) * cbi(j));
            else images.push_back(-c);
        }
    }
    return RingMap(F, R, images);
}

// point translation: full coordinates from reduced values (n >= 4)
inline std::vector<Scalar> lift_reduced_point(int n, const Ring& reduced, const Ring& full,
                                              const std::vector<Scalar>& pt) {
    const Field& f = reduced->field;
    auto rv = [&](const std::string& name) { return pt[reduced->var_index(name)]; };
    Scalar a = rv("a"), c = rv("c"), cb = rv("cb");
    Scalar b = cb - c;
    std::vector<Scalar> out(full->nvars(), Scalar::of_int(f, 0));
    auto set = [&](const std::string& name, const Scalar& v) { out[full->var_index(name)] = v; };
    set("a", a);
    set("b", b);
    set("c", c);
    auto cval = [&](int i, int j) -> Scalar {  // reduced-coordinate value of c_{ij}, i,j >= 4
        if (i < j) return rv(cij_name(i, j));
        Scalar s = a;
        for (int k : {j, i}) s += rv(ci_name(k)) + rv(cbi_name(k));
        return s - rv(cij_name(j, i));
    };
    for (int i = 4; i <= n; ++i) {
        Scalar ci = rv(ci_name(i)), cbi = rv(cbi_name(i));
        Scalar c3i = a + ci + cbi;
        set(cij_name(2, i), ci);
        set(cij_name(i, 2), cbi);
        set(cij_name(3, i), c3i);
        set(dij_name(2, i), -c);
        set(dij_name(3, i), b - c3i * cbi);
        for (int j = i + 1; j <= n; ++j) {
            set(cij_name(i, j), cval(i, j));
            set(cij_name(j, i), cval(j, i));
            set(dij_name(i, j), -c);
        }
    }
    // d = -c_{34} c - c_{24} d_{34}
    Scalar c34 = a + rv(ci_name(4)) + rv(cbi_name(4));
    Scalar d34 = b - c34 * rv(cbi_name(4));
    set("d", -(c34 * c) - rv(ci_name(4)) * d34);
    return out;
}

// ---- universal curve ---------------------------------------------------------

struct CurveSpec {
    int n = 0;
    Ring ring;                     // affine chart: base coordinates + x_i
    IdealPresentation relations;   // affine relations
    Ring homog_ring;               // base coordinates + T + X_i
    IdealPresentation homog_relations;
    bool specialized = false;
    std::vector<std::string> x_names;  // x-variables in the affine ring
    // marked points in (T, X_2..X_n) for n >= 3; p_1 first
    std::vector<std::vector<Scalar>> marked_points;
};

inline std::string x_name(int i) { return "x" + std::to_string(i); }
inline std::string bigx_name(int i) { return "X" + std::to_string(i); }

namespace detail {

// homogenize by T with respect to total degree in the x-block
inline Polynomial homogenize_x(const Polynomial& f, const Ring& target, const std::vector<int>& xdeg_of_var,
                               int t_index, const std::vector<int>& var_map) {
    int maxd = 0;
    for (const auto& t : f.terms()) {
        int d = 0;
        for (size_t v = 0; v < t.m.size(); ++v) d += t.m[v] * xdeg_of_var[v];
        maxd = std::max(maxd, d);
    }
    Polynomial out(target);
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        int d = 0;
        Monomial m = mono_one(*target);
        for (size_t v = 0; v < t.m.size(); ++v) {
            m[var_map[v]] = t.m[v];
            d += t.m[v] * xdeg_of_var[v];
        }
        m[t_index] = static_cast<uint8_t>(maxd - d);
        terms.push_back({m, t.c});
    }
    return Polynomial::from_terms(target, terms);
}

}  // namespace detail

// The affine family of curves over U_n (n >= 3) plus its homogenization and the
// marked-point sections; base coordinates are the reduced ones for n >= 4 and
// a, b, c, d for n = 3. With params, the curve specialized at that point.
inline CurveSpec curve_over_un(int n, const Field& field = Field::rationals(),
                               const std::optional<std::vector<Scalar>>& params = std::nullopt) {
    require(n >= 3, "curve_over_un needs n >= 3 (see special_curve)");
    CurveSpec C;
    C.n = n;
    // base ring data
    std::vector<VarSpec> base;
    if (n == 3) base = {{"a", 1}, {"b", 2}, {"c", 2}, {"d", 3}};
    else {
        ModuliSpec red = u_n_reduced(n, field);
        for (const auto& v : red.ring->vars) base.push_back(v);
    }
    std::vector<VarSpec> vars = base;
    for (int i = 2; i <= n; ++i) vars.push_back({x_name(i), 1});
    C.ring = make_ring(vars, field);
    for (int i = 2; i <= n; ++i) C.x_names.push_back(x_name(i));
    const Ring& R = C.ring;
    auto x = [&](int i) { return Polynomial::var(R, x_name(i)); };
    C.relations = IdealPresentation(R, "universal curve, affine relations");
    if (n == 3) {
        C.relations.add("cubic",
                        x(2) * x(3) * x(3) - x(2) * x(2) * x(3) - Polynomial::var(R, "a") * x(2) * x(3) -
                            Polynomial::var(R, "b") * x(2) - Polynomial::var(R, "c") * x(3) -
                            Polynomial::var(R, "d"));
    } else {
        Polynomial a = Polynomial::var(R, "a"), c = Polynomial::var(R, "c"), cb = Polynomial::var(R, "cb");
        auto ci = [&](int i) { return Polynomial::var(R, ci_name(i)); };
        auto cbi = [&](int i) { return Polynomial::var(R, cbi_name(i)); };
        auto cij = [&](int i, int j) {
            if (i < j) return Polynomial::var(R, cij_name(i, j));
            Polynomial s = a;
            for (int k : {j, i}) s += ci(k) + cbi(k);
            return s - Polynomial::var(R, cij_name(j, i));
        };
        for (int i = 4; i <= n; ++i)
            C.relations.add("r2_" + std::to_string(i), x(2) * x(i) - x(2) * x(3) - ci(i) * x(i) - cbi(i) * x(2) + c);
        for (int i = 4; i <= n; ++i)
            C.relations.add("r3_" + std::to_string(i),
                            x(3) * x(i) - x(2) * x(3) - (a + ci(i) + cbi(i)) * (x(i) - cbi(i)) - cb + c);
        for (int i = 4; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                C.relations.add("r_" + std::to_string(i) + "_" + std::to_string(j),
                                x(i) * x(j) - x(2) * x(3) - cij(i, j) * x(j) - cij(j, i) * x(i) + c);
    }

    if (params) {
        // points must satisfy the moduli ideal
        if (n >= 4) {
            ModuliSpec red = u_n_reduced(n, field);
            require(static_cast<int>(params->size()) == red.ring->nvars(), "params length mismatch");
            require(point_on_scheme(red.ideal, *params), "parameters violate the moduli ideal");
        } else {
            require(static_cast<int>(params->size()) == 4, "params length mismatch for n = 3");
        }
        std::vector<VarSpec> xv;
        for (int i = 2; i <= n; ++i) xv.push_back({x_name(i), 1});
        Ring Rx = make_ring(xv, field);
        std::vector<Polynomial> images;
        for (int v = 0; v < R->nvars(); ++v) {
            if (v < static_cast<int>(base.size())) images.push_back(Polynomial::constant(Rx, (*params)[v]));
            else images.push_back(Polynomial::var(Rx, R->vars[v].name));
        }
        RingMap specialize(R, Rx, images);
        IdealPresentation sp(Rx, C.relations.provenance + " (specialized)");
        for (const auto& [name, g] : C.relations.gens) {
            Polynomial img = specialize.apply(g);
            if (!img.is_zero()) sp.add(name, img);
        }
        C.ring = Rx;
        C.relations = sp;
        C.x_names.clear();
        for (int i = 2; i <= n; ++i) C.x_names.push_back(x_name(i));
        C.specialized = true;
    }

    // homogenization by T
    {
        const Ring& A = C.ring;
        std::vector<VarSpec> hv;
        std::vector<int> var_map(A->nvars(), -1);
        std::vector<int> xdeg(A->nvars(), 0);
        for (int v = 0; v < A->nvars(); ++v) {
            const std::string& nm = A->vars[v].name;
            if (nm.size() >= 2 && nm[0] == 'x' && std::isdigit(static_cast<unsigned char>(nm[1]))) xdeg[v] = 1;
        }
        for (int v = 0; v < A->nvars(); ++v)
            if (!xdeg[v]) hv.push_back(A->vars[v]);
        int t_index = static_cast<int>(hv.size());
        hv.push_back({"T", 1});
        for (int v = 0; v < A->nvars(); ++v)
            if (xdeg[v]) hv.push_back({"X" + A->vars[v].name.substr(1), 1});
        C.homog_ring = make_ring(hv, field);
        int pos = 0;
        for (int v = 0; v < A->nvars(); ++v)
            if (!xdeg[v]) var_map[v] = pos++;
        ++pos;  // skip T
        for (int v = 0; v < A->nvars(); ++v)
            if (xdeg[v]) var_map[v] = pos++;
        C.homog_relations = IdealPresentation(C.homog_ring, "universal curve, homogenized by T");
        for (const auto& [name, g] : C.relations.gens)
            C.homog_relations.add(name, detail::homogenize_x(g, C.homog_ring, xdeg, t_index, var_map));
    }

    // marked points: p_1 = [T=0, X_2 = ... = X_n], p_i = [T=0, X_j = 0 for j != i]
    for (int i = 1; i <= n; ++i) {
        std::vector<Scalar> pt(n, Scalar::of_int(field, 0));  // (T, X_2, .., X_n)
        if (i == 1)
            for (int j = 1; j < n; ++j) pt[j] = Scalar::of_int(field, 1);
        else
            pt[i - 1] = Scalar::of_int(field, 1);
        C.marked_points.push_back(std::move(pt));
    }
    return C;
}

// Jacobian rank of the homogenized system at a marked point of a specialized
// curve, in the affine chart of the point's nonzero coordinate. Smoothness at
// the marked point is corank 1: rank = (n - 1) - 1.
inline int marked_point_chart_rank(const CurveSpec& C, int point_index) {
    require(C.specialized, "marked-point smoothness wants a specialized curve");
    require(point_index >= 1 && point_index <= C.n, "marked point out of range");
    const Ring& H = C.homog_ring;
    const auto& pt = C.marked_points[point_index - 1];  // (T, X_2..X_n)
    int chart = -1;
    for (int v = 1; v < H->nvars(); ++v)
        if (!pt[v].is_zero()) {
            chart = v;
            break;
        }
    std::vector<VarSpec> cv;
    for (int v = 0; v < H->nvars(); ++v)
        if (v != chart) cv.push_back(H->vars[v]);
    Ring chart_ring = make_ring(cv, H->field);
    std::vector<Polynomial> images;
    for (int v = 0; v < H->nvars(); ++v) {
        if (v == chart) images.push_back(Polynomial::from_int(chart_ring, 1));
        else images.push_back(Polynomial::var(chart_ring, H->vars[v].name));
    }
    RingMap to_chart(H, chart_ring, images);
    IdealPresentation CI(chart_ring, "marked-point chart");
    int k = 0;
    for (const auto& [name, g] : C.homog_relations.gens) {
        Polynomial img = to_chart.apply(g);
        if (!img.is_zero()) CI.add("c" + std::to_string(k++), img);
    }
    std::vector<Scalar> cpt;
    for (int v = 0; v < H->nvars(); ++v)
        if (v != chart) cpt.push_back(pt[v] / pt[chart]);
    return rank_of(jacobian_at(CI, cpt));
}

inline bool marked_points_smooth(const CurveSpec& C) {
    for (int j = 1; j <= C.n; ++j)
        if (marked_point_chart_rank(C, j) != C.n - 2) return false;
    return true;
}

// n = 1 (Weierstrass / cusp unfolding) and n = 2 (tacnode unfolding)
inline CurveSpec special_curve(int n, const Field& field = Field::rationals(),
                               const std::optional<std::vector<Scalar>>& params = std::nullopt) {
    require(n == 1 || n == 2, "special_curve covers n = 1, 2");
    CurveSpec C;
    C.n = n;
    std::vector<VarSpec> vars;
    if (n == 1) vars = {{"de", 4}, {"ep", 6}, {"x", 2}, {"y", 3}};
    else vars = {{"al", 2}, {"be", 3}, {"ga", 4}, {"x", 1}, {"y", 2}};
    C.ring = make_ring(vars, field);
    C.x_names = {"x", "y"};
    C.relations = IdealPresentation(C.ring, n == 1 ? "cusp unfolding" : "tacnode unfolding");
    if (n == 1)
        C.relations.add("weier", parse_poly(C.ring, "y^2 - x^3 - de*x - ep"));
    else
        C.relations.add("tacn", parse_poly(C.ring, "y^2 - y*x^2 - al*y + al*x^2 - be*x - ga"));
    if (params) {
        require(params->size() == (n == 1 ? 2u : 3u), "params length mismatch");
        std::vector<VarSpec> xv = {vars[vars.size() - 2], vars[vars.size() - 1]};
        Ring Rx = make_ring(xv, field);
        std::vector<Polynomial> images;
        for (size_t v = 0; v + 2 < vars.size(); ++v) images.push_back(Polynomial::constant(Rx, (*params)[v]));
        images.push_back(Polynomial::var(Rx, "x"));
        images.push_back(Polynomial::var(Rx, "y"));
        RingMap specialize(C.ring, Rx, images);
        IdealPresentation sp(Rx, C.relations.provenance + " (specialized)");
        for (const auto& [name, g] : C.relations.gens) sp.add(name, specialize.apply(g));
        C.ring = Rx;
        C.relations = sp;
        C.specialized = true;
    }
    return C;
}

// x_2 -> c_{n+1}, x_3 -> a + c_{n+1} + cb_{n+1}, x_i -> c_{i,n+1}; base fixed.
// Source: affine curve ring of curve_over_un(n); target: reduced ring of U_{n+1}.
inline RingMap substitution_map(int n, const Field& field = Field::rationals()) {
    require(n >= 3, "substitution_map needs n >= 3");
    CurveSpec C = curve_over_un(n, field);
    Ring T = reduced_ring(n + 1, field);
    auto var = [&](const std::string& nm) { return Polynomial::var(T, nm); };
    std::vector<Polynomial> images;
    for (const auto& v : C.ring->vars) {
        const std::string& nm = v.name;
        if (nm == x_name(2)) images.push_back(var(ci_name(n + 1)));
        else if (nm == x_name(3)) images.push_back(var("a") + var(ci_name(n + 1)) + var(cbi_name(n + 1)));
        else if (nm.size() >= 2 && nm[0] == 'x') {
            int i = std::stoi(nm.substr(1));
            images.push_back(var(cij_name(i, n + 1)));
        } else if (n == 3 && nm == "b") {
            images.push_back(var("cb") - var("c"));
        } else if (n == 3 && nm == "d") {
            Polynomial c34 = var("a") + var(ci_name(4)) + var(cbi_name(4));
            images.push_back(c34 * var(ci_name(4)) * var(cbi_name(4)) - var("cb") * var(ci_name(4)) -
                             var("c") * var(cbi_name(4)) - var("a") * var("c"));
        } else {
            images.push_back(var(nm));
        }
    }
    return RingMap(C.ring, T, images);
}

// ---- symmetric group action on reduced coordinates --------------------------

// labels: "13", "23", "2m" for m >= 4, or "swap:i:j" for a transposition of
// subscripts i < j fixing the markings 1, 2, 3
inline RingMap sn_involution(int n, const std::string& label, const Field& field = Field::rationals()) {
    require(n >= 5, "sn_involution needs reduced coordinates with n >= 5");
    Ring R = reduced_ring(n, field);
    auto var = [&](const std::string& nm) { return Polynomial::var(R, nm); };
    auto cij = [&](int i, int j) { return reduced_cij(R, i, j); };
    std::vector<Polynomial> images;
    auto img_default = [&]() {
        images.clear();
        for (const auto& v : R->vars) images.push_back(var(v.name));
    };
    img_default();
    auto set = [&](const std::string& nm, const Polynomial& p) { images[R->var_index(nm)] = p; };

    if (label == "13") {
        set("c", var("cb"));
        set("cb", var("c"));
        for (int i = 4; i <= n; ++i) {
            set(ci_name(i), var(cbi_name(i)));
            set(cbi_name(i), var(ci_name(i)));
        }
        for (int i = 4; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) set(cij_name(i, j), cij(j, i));
        return RingMap(R, R, images);
    }
    if (label == "23") {
        set("a", -var("a"));
        set("c", var("c") - var("cb"));
        set("cb", -var("cb"));
        for (int i = 4; i <= n; ++i) {
            set(ci_name(i), var("a") + var(ci_name(i)) + var(cbi_name(i)));
            set(cbi_name(i), -var(cbi_name(i)));
        }
        for (int i = 4; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) set(cij_name(i, j), var(cij_name(i, j)) - var(cbi_name(i)));
        return RingMap(R, R, images);
    }
    if (label.size() >= 2 && label[0] == '2' && label != "23") {
        int m = std::stoi(label.substr(1));
        require(m >= 4 && m <= n, "unsupported involution label " + label);
        Polynomial am = var("a") + var(ci_name(m)) + var(cbi_name(m));
        set("a", -var("a") - Polynomial::from_int(R, 2) * (var(ci_name(m)) + var(cbi_name(m))));
        set("c", var("cb") - var(cbi_name(m)) * am);
        set("cb", var("c") - var(ci_name(m)) * am);
        set(ci_name(m), var(cbi_name(m)));
        set(cbi_name(m), var(ci_name(m)));
        for (int i = 4; i <= n; ++i) {
            if (i == m) continue;
            set(ci_name(i), cij(m, i));
            set(cbi_name(i), cij(i, m));
        }
        for (int i = 4; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                if (i == m) set(cij_name(i, j), var(ci_name(j)));
                else if (j == m) set(cij_name(i, j), var(cbi_name(i)));
                // else fixed
            }
        return RingMap(R, R, images);
    }
    if (label.rfind("swap:", 0) == 0) {
        auto c1 = label.find(':'), c2 = label.find(':', c1 + 1);
        int i0 = std::stoi(label.substr(c1 + 1, c2 - c1 - 1));
        int j0 = std::stoi(label.substr(c2 + 1));
        require(i0 >= 4 && j0 >= 4 && i0 < j0 && j0 <= n, "unsupported swap label " + label);
        auto sigma = [&](int k) { return k == i0 ? j0 : (k == j0 ? i0 : k); };
        for (int i = 4; i <= n; ++i) {
            set(ci_name(i), var(ci_name(sigma(i))));
            set(cbi_name(i), var(cbi_name(sigma(i))));
        }
        for (int i = 4; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) set(cij_name(i, j), cij(sigma(i), sigma(j)));
        return RingMap(R, R, images);
    }
    throw error("unsupported involution label " + label);
}

// ---- special points ----------------------------------------------------------

// P_in in reduced homogeneous coordinates, free scale fixed to 1; c = cb = 0
inline std::vector<Scalar> special_point_Pin(int n, int i, const Field& field = Field::rationals()) {
    require(n >= 6, "special_point_Pin needs n >= 6");
    require(i >= 1 && i <= n - 1, "point index out of range");
    Ring R = reduced_ring(n, field);
    std::vector<Scalar> pt(R->nvars(), Scalar::of_int(field, 0));
    Scalar one = Scalar::of_int(field, 1);
    if (i == 1) {
        pt[R->var_index(ci_name(n))] = one;
        for (int k = 4; k < n; ++k) pt[R->var_index(cij_name(k, n))] = one;
    } else if (i == 2) {
        pt[R->var_index(ci_name(n))] = one;
        pt[R->var_index(cbi_name(n))] = -one;
    } else if (i == 3) {
        pt[R->var_index(cbi_name(n))] = one;
    } else {
        pt[R->var_index(cij_name(i, n))] = one;
    }
    return pt;
}

// ---- the wheel of n projective lines ----------------------------------------

// all component images are affine-linear in the chart parameter
struct WheelData {
    int n = 0;
    Field field;
    // images[j - 2][k - 1] = restriction of x_j to the component C_k
    std::vector<std::vector<UniPoly>> images;
};

inline WheelData wheel_data(int n, const Field& field = Field::rationals()) {
    require(n >= 3, "wheel needs n >= 3");
    WheelData W;
    W.n = n;
    W.field = field;
    Scalar one = Scalar::of_int(field, 1), zero = Scalar::of_int(field, 0);
    for (int j = 2; j <= n; ++j) {
        std::vector<UniPoly> row;
        for (int k = 1; k <= n; ++k) {
            UniPoly img(field);
            if (j == 2) {
                if (k == 1) img = UniPoly::linear(field, zero, one);        // u_1
                else if (k == 2) img = UniPoly::linear(field, one, -one);   // 1 - u_2
            } else {
                if (k == 1) img = UniPoly::linear(field, -one, one);        // u_1 - 1
                else if (k == j) img = UniPoly::linear(field, zero, -one);  // -u_j
                else if (k > j) img = UniPoly::constant(field, -one);       // -1
            }
            row.push_back(img);
        }
        W.images.push_back(std::move(row));
    }
    return W;
}

// defining relations of the punctured wheel
inline IdealPresentation wheel_relations(int n, const Field& field = Field::rationals()) {
    std::vector<VarSpec> vars;
    for (int i = 2; i <= n; ++i) vars.push_back({x_name(i), 1});
    Ring R = make_ring(vars, field);
    IdealPresentation I(R, "wheel of lines");
    auto x = [&](int i) { return Polynomial::var(R, x_name(i)); };
    for (int j = 4; j <= n; ++j) I.add("w2_" + std::to_string(j), x(2) * x(j) - x(2) * x(3));
    for (int i = 3; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            I.add("w_" + std::to_string(i) + "_" + std::to_string(j), x(i) * x(j) - x(2) * x(3) + x(j));
    I.add("wcubic", x(2) * x(3) * x(3) - x(2) * x(2) * x(3) + x(2) * x(3));
    return I;
}

// the wheel's moduli point, in full coordinates and (n >= 4) reduced ones
struct WheelPoint {
    std::vector<Scalar> full;
    std::vector<Scalar> reduced;  // empty for n = 3
};

inline WheelPoint wheel_point(int n, const Field& field = Field::rationals()) {
    require(n >= 3, "wheel needs n >= 3");
    WheelPoint P;
    Ring F = full_ring(n, field);
    P.full.assign(F->nvars(), Scalar::of_int(field, 0));
    Scalar minus_one = -Scalar::of_int(field, 1);
    P.full[F->var_index("a")] = minus_one;
    for (int i = 3; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) P.full[F->var_index(cij_name(i, j))] = minus_one;
    if (n >= 4) {
        Ring R = reduced_ring(n, field);
        P.reduced.assign(R->nvars(), Scalar::of_int(field, 0));
        P.reduced[R->var_index("a")] = minus_one;
        for (int i = 4; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) P.reduced[R->var_index(cij_name(i, j))] = minus_one;
    }
    return P;
}

// membership test for functions on C_{1,n}: all f_i(0) equal and
// f_1'(0) = f_2'(0) + ... + f_n'(0)
inline bool c1n_membership(const std::vector<UniPoly>& f) {
    require(f.size() >= 2, "c1n_membership needs n >= 2 component functions");
    const Field& k = f[0].field;
    for (size_t i = 1; i < f.size(); ++i)
        if (f[i].at0() != f[0].at0()) return false;
    Scalar rhs = Scalar::of_int(k, 0);
    for (size_t i = 1; i < f.size(); ++i) rhs += f[i].deriv0();
    return f[0].deriv0() == rhs;
}

// ---- char 2/3 vector fields on the cusp and tacnode --------------------------

struct CharPVectorField {
    std::string label;   // e.g. "x^2 d_y"
    uint64_t p = 2;
    Polynomial down_x;   // coefficient of d_x, in k[x, y]
    Polynomial down_y;   // coefficient of d_y
    std::vector<LaurentPoly> up;  // coefficient of d_t per branch of the normalization
};

enum class CharPCase { Cusp2, Cusp3, Tacnode2 };

inline CharPCase charp_case_parse(const std::string& s) {
    if (s == "cusp@2") return CharPCase::Cusp2;
    if (s == "cusp@3") return CharPCase::Cusp3;
    if (s == "tacnode@2") return CharPCase::Tacnode2;
    throw error("unknown char-p case " + s);
}

// The generating global vector fields, downstairs and on the normalization.
// The optional prime override exists for the negative control at a wrong p.
inline std::vector<CharPVectorField> charp_vector_fields(CharPCase cs, std::optional<uint64_t> p_override = {}) {
    uint64_t p = p_override.value_or(cs == CharPCase::Cusp3 ? 3 : 2);
    Field k = Field::prime(p);
    Ring R = make_ring({{"x", 1}, {"y", 2}}, k);
    auto poly = [&](const std::string& s) { return parse_poly(R, s); };
    auto zero = Polynomial::zero(R);
    auto lt = [&](int e, long c) { return LaurentPoly::term_int(k, e, c); };
    std::vector<CharPVectorField> out;
    switch (cs) {
        case CharPCase::Cusp2:
            out.push_back({"x^2 d_y", p, zero, poly("x^2"), {lt(2, 1)}});
            out.push_back({"y d_y", p, zero, poly("y"), {lt(1, 1)}});
            out.push_back({"x d_y", p, zero, poly("x"), {lt(0, 1)}});
            out.push_back({"d_y", p, zero, poly("1"), {lt(-2, 1)}});
            break;
        case CharPCase::Cusp3:
            // upstairs fields carry the factor 2 = -1 forced by d(t^2) = 2t dt
            out.push_back({"x^2 d_x", p, poly("x^2"), zero, {lt(3, 2)}});
            out.push_back({"x d_x", p, poly("x"), zero, {lt(1, 2)}});
            out.push_back({"y d_x", p, poly("y"), zero, {lt(2, 2)}});
            out.push_back({"d_x", p, poly("1"), zero, {lt(-1, 2)}});
            break;
        case CharPCase::Tacnode2:
            out.push_back({"y d_x", p, poly("y"), zero, {lt(2, 1), lt(0, 0)}});
            out.push_back({"(x^2-y) d_x", p, poly("x^2 - y"), zero, {lt(0, 0), lt(2, 1)}});
            out.push_back({"x d_x", p, poly("x"), zero, {lt(1, 1), lt(1, 1)}});
            out.push_back({"d_x", p, poly("1"), zero, {lt(0, 1), lt(0, 1)}});
            break;
    }
    return out;
}

// ---- F_p point sampling on the moduli spaces ---------------------------------

// Reduced-coordinate point of U_n over F_p, built by recursive fiber sampling:
// a free point of U_5, then a curve point over it for each step up.
inline std::vector<Scalar> sample_un_point(int n, uint64_t p, Rng& rng) {
    require(n >= 5, "sample_un_point needs n >= 5");
    Field k = Field::prime(p);
    if (n == 5) {
        Ring R5 = reduced_ring(5, k);
        Scalar a = Scalar::residue(rng.below(p), p);
        Scalar c4 = Scalar::residue(rng.below(p), p), cb4 = Scalar::residue(rng.below(p), p);
        Scalar c5 = Scalar::residue(rng.below(p), p), cb5 = Scalar::residue(rng.below(p), p);
        Scalar c45 = Scalar::residue(rng.below(p), p);
        Scalar c = (a + cb4 + c5 + cb5) * c5 - (c5 - c4) * c45;
        Scalar cb = (a + c4 + cb4 + c5) * cb4 - (cb4 - cb5) * c45;
        std::vector<Scalar> pt(R5->nvars(), Scalar::of_int(k, 0));
        pt[R5->var_index("a")] = a;
        pt[R5->var_index("c")] = c;
        pt[R5->var_index("cb")] = cb;
        pt[R5->var_index(ci_name(4))] = c4;
        pt[R5->var_index(cbi_name(4))] = cb4;
        pt[R5->var_index(ci_name(5))] = c5;
        pt[R5->var_index(cbi_name(5))] = cb5;
        pt[R5->var_index(cij_name(4, 5))] = c45;
        return pt;
    }
    int m = n - 1;
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::vector<Scalar> base = sample_un_point(m, p, rng);
        CurveSpec C = curve_over_un(m, k, base);
        // sample a curve point: random x2, scan x3, then solve the x_i
        Ring Rm = reduced_ring(m, k);
        auto bv = [&](const std::string& nm) { return base[Rm->var_index(nm)]; };
        for (int tries = 0; tries < 30; ++tries) {
            Scalar x2 = Scalar::residue(rng.below(p), p);
            uint64_t shift = rng.below(p);
            for (uint64_t s = 0; s < p; ++s) {
                Scalar x3 = Scalar::residue((s + shift) % p, p);
                std::vector<Scalar> xs(m - 1, Scalar::of_int(k, 0));
                xs[0] = x2;
                xs[1] = x3;
                bool ok = true;
                for (int i = 4; i <= m && ok; ++i) {
                    Scalar den = x2 - bv(ci_name(i));
                    if (den.is_zero()) { ok = false; break; }
                    xs[i - 2] = (x2 * x3 + bv(cbi_name(i)) * x2 - bv("c")) / den;
                }
                if (!ok) continue;
                if (!point_on_scheme(C.relations, xs)) continue;
                // lift along the substitution map: U_n coordinates from the
                // U_{n-1} point plus the curve point
                Ring Rn = reduced_ring(n, k);
                std::vector<Scalar> pt(Rn->nvars(), Scalar::of_int(k, 0));
                for (const auto& v : Rm->vars) pt[Rn->var_index(v.name)] = bv(v.name);
                pt[Rn->var_index(ci_name(n))] = x2;
                pt[Rn->var_index(cbi_name(n))] = x3 - bv("a") - x2;
                for (int i = 4; i <= m; ++i) pt[Rn->var_index(cij_name(i, n))] = xs[i - 2];
                return pt;
            }
        }
    }
    throw error("fiber sampling failed");
}

}  // namespace moduli
}  // namespace g1m

#endif
