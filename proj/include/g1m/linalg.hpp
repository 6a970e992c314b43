#ifndef G1M_LINALG_HPP
#define G1M_LINALG_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "g1m/scalar.hpp"

namespace g1m {

// Sparse exact matrix. No stored zeros; all entries share the field tag.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    Field field = Field::rationals();
    std::map<std::pair<int, int>, Scalar> entries;

    SparseMatrix() = default;
    SparseMatrix(int r, int c, const Field& f) : rows(r), cols(c), field(f) {}

    void set(int r, int c, const Scalar& v) {
        require(r >= 0 && r < rows && c >= 0 && c < cols, "entry out of range");
        require(v.field() == field, "field mismatch in matrix entry");
        if (v.is_zero()) entries.erase({r, c});
        else entries[{r, c}] = v;
    }
    Scalar get(int r, int c) const {
        auto it = entries.find({r, c});
        return it == entries.end() ? Scalar::of_int(field, 0) : it->second;
    }
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        require(static_cast<int>(v.size()) == cols, "vector length mismatch");
        std::vector<Scalar> out(rows, Scalar::of_int(field, 0));
        for (const auto& [rc, val] : entries) out[rc.first] += val * v[rc.second];
        return out;
    }
};

struct RankKernel {
    int rank = 0;
    std::vector<std::vector<Scalar>> kernel;  // each of length cols, M v = 0
};

namespace detail {

using IRow = std::vector<std::pair<int, mpz_class>>;  // sorted by col

inline void irow_normalize(IRow& r) {
    mpz_class g = 0;
    for (auto& [c, v] : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1) for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    if (!r.empty() && r.front().second < 0) for (auto& [c, v] : r) v = -v;
}

// r := a*r - b*piv, fraction-free; result content-normalized
inline IRow irow_combine(const IRow& r, const IRow& piv, const mpz_class& a, const mpz_class& b) {
    IRow out;
    out.reserve(r.size() + piv.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < piv.size()) {
        if (j == piv.size() || (i < r.size() && r[i].first < piv[j].first)) {
            out.emplace_back(r[i].first, a * r[i].second);
            ++i;
        } else if (i == r.size() || piv[j].first < r[i].first) {
            out.emplace_back(piv[j].first, -b * piv[j].second);
            ++j;
        } else {
            mpz_class v = a * r[i].second - b * piv[j].second;
            if (v != 0) out.emplace_back(r[i].first, v);
            ++i; ++j;
        }
    }
    irow_normalize(out);
    return out;
}

// Fraction-free sparse echelon over Z (rows are row-equivalent to the input
// over Q). Returns echelon rows, each with a distinct leading column.
inline std::vector<IRow> echelon_q(std::vector<IRow> input) {
    std::vector<IRow> pivots;                 // echelon rows
    std::map<int, int> pivot_of_col;          // leading col -> index in pivots
    for (auto& row : input) {
        irow_normalize(row);
        bool again = true;
        while (again && !row.empty()) {
            again = false;
            int lead = row.front().first;
            auto it = pivot_of_col.find(lead);
            if (it != pivot_of_col.end()) {
                const IRow& piv = pivots[it->second];
                row = irow_combine(row, piv, piv.front().second, row.front().second);
                again = true;
            }
        }
        if (!row.empty()) {
            pivot_of_col[row.front().first] = static_cast<int>(pivots.size());
            pivots.push_back(std::move(row));
        }
    }
    return pivots;
}

using PRow = std::vector<std::pair<int, uint64_t>>;

inline std::vector<PRow> echelon_p(std::vector<PRow> input, uint64_t p) {
    std::vector<PRow> pivots;
    std::map<int, int> pivot_of_col;
    auto scale_monic = [&](PRow& r) {
        if (r.empty()) return;
        uint64_t inv = powmod_u64(r.front().second, p - 2, p);
        for (auto& [c, v] : r) v = mulmod_u64(v, inv, p);
    };
    for (auto& row : input) {
        bool again = true;
        while (again && !row.empty()) {
            again = false;
            auto it = pivot_of_col.find(row.front().first);
            if (it != pivot_of_col.end()) {
                const PRow& piv = pivots[it->second];
                uint64_t m = row.front().second;  // piv is monic
                PRow out;
                out.reserve(row.size() + piv.size());
                size_t i = 0, j = 0;
                while (i < row.size() || j < piv.size()) {
                    if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
                        out.push_back(row[i]); ++i;
                    } else if (i == row.size() || piv[j].first < row[i].first) {
                        uint64_t v = p - mulmod_u64(m, piv[j].second, p);
                        if (v != p && v != 0) out.emplace_back(piv[j].first, v % p);
                        ++j;
                    } else {
                        uint64_t v = (row[i].second + p - mulmod_u64(m, piv[j].second, p)) % p;
                        if (v != 0) out.emplace_back(row[i].first, v);
                        ++i; ++j;
                    }
                }
                row = std::move(out);
                again = true;
            }
        }
        if (!row.empty()) {
            scale_monic(row);
            pivot_of_col[row.front().first] = static_cast<int>(pivots.size());
            pivots.push_back(std::move(row));
        }
    }
    return pivots;
}

}  // namespace detail

// Exact rank and kernel basis. Fraction-free elimination over Q, plain
// Gaussian over F_p. rank + |kernel| = cols.
inline RankKernel rank_and_kernel(const SparseMatrix& M) {
    RankKernel out;
    const Field& f = M.field;
    // gather rows
    std::vector<std::map<int, Scalar>> rowmaps(M.rows);
    for (const auto& [rc, v] : M.entries) rowmaps[rc.first][rc.second] = v;

    std::vector<std::vector<std::pair<int, Scalar>>> ech;  // echelon rows as scalars
    if (f.is_q()) {
        std::vector<detail::IRow> rows;
        rows.reserve(M.rows);
        for (auto& rm : rowmaps) {
            if (rm.empty()) continue;
            mpz_class den = 1;
            for (auto& [c, v] : rm) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.rat().get_den().get_mpz_t());
            detail::IRow r;
            r.reserve(rm.size());
            for (auto& [c, v] : rm) {
                mpq_class q = v.rat() * den;
                r.emplace_back(c, mpz_class(q.get_num()));
            }
            rows.push_back(std::move(r));
        }
        auto piv = detail::echelon_q(std::move(rows));
        for (auto& r : piv) {
            std::vector<std::pair<int, Scalar>> row;
            for (auto& [c, v] : r) row.emplace_back(c, Scalar::rational(mpq_class(v)));
            ech.push_back(std::move(row));
        }
    } else {
        std::vector<detail::PRow> rows;
        rows.reserve(M.rows);
        for (auto& rm : rowmaps) {
            if (rm.empty()) continue;
            detail::PRow r;
            for (auto& [c, v] : rm) r.emplace_back(c, v.res());
            rows.push_back(std::move(r));
        }
        auto piv = detail::echelon_p(std::move(rows), f.p);
        for (auto& r : piv) {
            std::vector<std::pair<int, Scalar>> row;
            for (auto& [c, v] : r) row.emplace_back(c, Scalar::residue(v, f.p));
            ech.push_back(std::move(row));
        }
    }
    out.rank = static_cast<int>(ech.size());

    // kernel: one vector per free column, back-substituting pivots in
    // decreasing column order
    std::vector<int> pivot_col(ech.size());
    std::vector<char> is_pivot(M.cols, 0);
    for (size_t i = 0; i < ech.size(); ++i) {
        pivot_col[i] = ech[i].front().first;
        is_pivot[pivot_col[i]] = 1;
    }
    std::vector<size_t> order(ech.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivot_col[a] > pivot_col[b]; });

    Scalar zero = Scalar::of_int(f, 0);
    for (int fc = 0; fc < M.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Scalar> v(M.cols, zero);
        v[fc] = Scalar::of_int(f, 1);
        for (size_t oi : order) {
            const auto& row = ech[oi];
            Scalar s = zero;
            for (size_t k = 1; k < row.size(); ++k) s += row[k].second * v[row[k].first];
            v[row.front().first] = -s / row.front().second;
        }
        out.kernel.push_back(std::move(v));
    }
    return out;
}

inline int rank_of(const SparseMatrix& M) { return rank_and_kernel(M).rank; }

// One solution of M x = b, if any.
inline std::optional<std::vector<Scalar>> solve_linear(const SparseMatrix& M, const std::vector<Scalar>& b) {
    require(static_cast<int>(b.size()) == M.rows, "rhs length mismatch");
    SparseMatrix aug(M.rows, M.cols + 1, M.field);
    aug.entries = M.entries;
    for (int r = 0; r < M.rows; ++r)
        if (!b[r].is_zero()) aug.set(r, M.cols, -b[r]);
    auto rk = rank_and_kernel(aug);
    for (auto& v : rk.kernel) {
        if (!v.back().is_zero()) {
            std::vector<Scalar> x(M.cols, Scalar::of_int(M.field, 0));
            Scalar t = v.back().inv();
            for (int c = 0; c < M.cols; ++c) x[c] = v[c] * t;
            return x;
        }
    }
    return std::nullopt;
}

}  // namespace g1m

#endif
