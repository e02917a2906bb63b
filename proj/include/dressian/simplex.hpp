/**
 * Exact linear programming with the dictionary simplex method and Bland's
 * anti-cycling rule.
 *
 * Problems are stated over free variables:
 *     maximize c.x  subject to  A_le x <= b_le,  A_eq x = b_eq.
 * Equalities are eliminated up front by exact elimination; the remaining free
 * variables are pivoted into the basis once and never leave it; infeasible
 * starts go through the one-artificial-variable auxiliary problem.
 */
#pragma once

#include "dressian/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace dressian {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Vec x;
    Rational value;
};

namespace detail {

/**
 * Dictionary: basic_i = beta_i + sum_j coef[i][j] * nonbasic_j. The last
 * `obj_rows` rows are objective rows and never leave.
 */
class Dictionary {
public:
    std::vector<Vec> coef;
    Vec beta;
    std::vector<int> basic;      // variable id per row (objective rows: -1)
    std::vector<int> nonbasic;   // variable id per column
    std::vector<bool> free_row;  // rows whose basic variable is free (never leave, no sign constraint)

    void pivot(std::size_t row, std::size_t col) {
        const std::size_t ncols = nonbasic.size();
        Vec& pr = coef[row];
        const Rational inv = Rational(1) / pr[col];
        // Solve row for the entering variable.
        Rational nb = -beta[row] * inv;
        for (std::size_t k = 0; k < ncols; ++k)
            if (k != col && !pr[k].is_zero()) pr[k] = -pr[k] * inv;
        pr[col] = inv;
        beta[row] = nb;
        for (std::size_t r = 0; r < coef.size(); ++r) {
            if (r == row) continue;
            Vec& rr = coef[r];
            if (rr[col].is_zero()) continue;
            const Rational f = rr[col];
            beta[r] += f * beta[row];
            for (std::size_t k = 0; k < ncols; ++k) {
                if (k == col) continue;
                if (!pr[k].is_zero()) rr[k] += f * pr[k];
            }
            rr[col] = f * pr[col];
        }
        std::swap(basic[row], nonbasic[col]);
    }
};

// Runs Bland-rule primal simplex on the objective row `obj`, maximizing.
// Columns listed in `blocked` may not enter. Returns false when unbounded.
inline bool run_simplex(Dictionary& d, std::size_t obj, std::size_t constraint_rows, const std::vector<bool>& blocked) {
    while (true) {
        int enter = -1;
        for (std::size_t j = 0; j < d.nonbasic.size(); ++j) {
            if (blocked[d.nonbasic[j]]) continue;
            if (d.coef[obj][j].sign() > 0 && (enter < 0 || d.nonbasic[j] < d.nonbasic[enter])) enter = static_cast<int>(j);
        }
        if (enter < 0) return true;
        int leave = -1;
        Rational best;
        for (std::size_t i = 0; i < constraint_rows; ++i) {
            if (d.free_row[i]) continue;
            const Rational& a = d.coef[i][enter];
            if (a.sign() >= 0) continue;
            Rational ratio = d.beta[i] / -a;
            if (leave < 0 || ratio < best || (ratio == best && d.basic[i] < d.basic[leave])) {
                leave = static_cast<int>(i);
                best = ratio;
            }
        }
        if (leave < 0) return false;
        d.pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
    }
}

}  // namespace detail

/**
 * maximize objective.x subject to a_le x <= b_le and a_eq x = b_eq, x free.
 */
inline LpResult maximize(const Vec& objective, const Matrix& a_le, const Vec& b_le, const Matrix& a_eq = {},
                         const Vec& b_eq = {}) {
    const std::size_t n = objective.size();
    LpResult res;

    // Eliminate equalities: x = x0 + N z.
    Vec x0(n);
    Matrix basis;
    if (!a_eq.empty()) {
        auto sol = solve(a_eq, b_eq, n);
        if (!sol) return res;
        x0 = *sol;
        basis = nullspace(a_eq, n);
    } else {
        for (std::size_t i = 0; i < n; ++i) basis.push_back(unit_vec(n, i));
    }
    const std::size_t r = basis.size();
    const std::size_t m = a_le.size();

    // Reduced problem: maximize cz . z  s.t.  az z <= bz.
    Matrix az(m, Vec(r));
    Vec bz(m);
    for (std::size_t i = 0; i < m; ++i) {
        bz[i] = b_le[i] - dot(a_le[i], x0);
        for (std::size_t j = 0; j < r; ++j) az[i][j] = dot(a_le[i], basis[j]);
    }
    Vec cz(r);
    for (std::size_t j = 0; j < r; ++j) cz[j] = dot(objective, basis[j]);

    // Variable ids: z_j -> j, slack_i -> r + i, artificial -> r + m.
    const int art = static_cast<int>(r + m);
    detail::Dictionary d;
    for (std::size_t i = 0; i < m; ++i) {
        Vec row(r);
        for (std::size_t j = 0; j < r; ++j) row[j] = -az[i][j];
        d.coef.push_back(std::move(row));
        d.beta.push_back(bz[i]);
        d.basic.push_back(static_cast<int>(r + i));
        d.free_row.push_back(false);
    }
    for (std::size_t j = 0; j < r; ++j) d.nonbasic.push_back(static_cast<int>(j));
    // Objective row (phase 2).
    d.coef.push_back(cz);
    d.beta.push_back(0);
    d.basic.push_back(-1);
    d.free_row.push_back(true);
    const std::size_t obj = m;

    // Pivot the free variables into the basis.
    bool unbounded_direction = false;
    std::vector<int> dropped;
    for (std::size_t j = 0; j < r; ++j) {
        std::size_t col = 0;
        while (d.nonbasic[col] != static_cast<int>(j)) ++col;
        int row = -1;
        for (std::size_t i = 0; i < m; ++i)
            if (!d.free_row[i] && !d.coef[i][col].is_zero()) {
                row = static_cast<int>(i);
                break;
            }
        if (row < 0) {
            // z_j does not touch any constraint: fix it at zero.
            if (!d.coef[obj][col].is_zero()) unbounded_direction = true;
            dropped.push_back(static_cast<int>(j));
            continue;
        }
        d.pivot(static_cast<std::size_t>(row), col);
        d.free_row[static_cast<std::size_t>(row)] = true;
    }
    // Remove the columns of dropped free variables (they stay at 0).
    if (!dropped.empty()) {
        std::vector<std::size_t> keep;
        for (std::size_t c = 0; c < d.nonbasic.size(); ++c)
            if (std::find(dropped.begin(), dropped.end(), d.nonbasic[c]) == dropped.end()) keep.push_back(c);
        for (auto& row : d.coef) {
            Vec nr;
            nr.reserve(keep.size());
            for (auto c : keep) nr.push_back(row[c]);
            row = std::move(nr);
        }
        std::vector<int> nb;
        for (auto c : keep) nb.push_back(d.nonbasic[c]);
        d.nonbasic = std::move(nb);
    }

    std::vector<bool> blocked(static_cast<std::size_t>(art) + 1, false);

    // Phase 1.
    int worst = -1;
    for (std::size_t i = 0; i < m; ++i)
        if (!d.free_row[i] && d.beta[i].sign() < 0 && (worst < 0 || d.beta[i] < d.beta[worst])) worst = static_cast<int>(i);
    if (worst >= 0) {
        for (std::size_t i = 0; i < m; ++i) d.coef[i].push_back(d.free_row[i] ? Rational(0) : Rational(1));
        d.coef[obj].push_back(0);
        d.nonbasic.push_back(art);
        // Phase-1 objective: maximize -artificial.
        Vec aux(d.nonbasic.size());
        aux.back() = -1;
        d.coef.push_back(aux);
        d.beta.push_back(0);
        d.basic.push_back(-1);
        d.free_row.push_back(true);
        const std::size_t aux_row = d.coef.size() - 1;
        d.pivot(static_cast<std::size_t>(worst), d.nonbasic.size() - 1);
        detail::run_simplex(d, aux_row, m, blocked);
        if (d.beta[aux_row].sign() < 0) return res;
        // Drive the artificial out of the basis if it is still basic (at value 0).
        for (std::size_t i = 0; i < m; ++i) {
            if (d.basic[i] != art) continue;
            std::size_t col = 0;
            while (col < d.nonbasic.size() && d.coef[i][col].is_zero()) ++col;
            if (col < d.nonbasic.size()) d.pivot(i, col);
            break;
        }
        // Drop the artificial column and the phase-1 row.
        std::size_t acol = 0;
        while (acol < d.nonbasic.size() && d.nonbasic[acol] != art) ++acol;
        d.coef.pop_back();
        d.beta.pop_back();
        d.basic.pop_back();
        d.free_row.pop_back();
        if (acol < d.nonbasic.size()) {
            for (auto& row : d.coef) row.erase(row.begin() + static_cast<std::ptrdiff_t>(acol));
            d.nonbasic.erase(d.nonbasic.begin() + static_cast<std::ptrdiff_t>(acol));
        } else {
            // Artificial is basic in a row that is identically zero: drop the row.
            for (std::size_t i = 0; i < m; ++i)
                if (d.basic[i] == art) {
                    d.free_row[i] = true;
                    break;
                }
        }
    }

    if (unbounded_direction) {
        res.status = LpStatus::unbounded;
        return res;
    }
    if (!detail::run_simplex(d, obj, m, blocked)) {
        res.status = LpStatus::unbounded;
        return res;
    }

    Vec z(r);
    for (std::size_t i = 0; i < m; ++i)
        if (d.basic[i] >= 0 && d.basic[i] < static_cast<int>(r)) z[static_cast<std::size_t>(d.basic[i])] = d.beta[i];
    Vec x = x0;
    for (std::size_t j = 0; j < r; ++j)
        if (!z[j].is_zero())
            for (std::size_t t = 0; t < n; ++t)
                if (!basis[j][t].is_zero()) x[t] += z[j] * basis[j][t];
    res.status = LpStatus::optimal;
    res.x = std::move(x);
    res.value = dot(objective, res.x);
    return res;
}

/// An affine form coeffs.x + constant.
struct AffineForm {
    Vec coeffs;
    Rational constant;

    Rational eval(const Vec& x) const { return dot(coeffs, x) + constant; }
};

/**
 * A point satisfying every equality exactly and every strict inequality
 * (form > 0) strictly, or nullopt when no such point exists. The gap t in
 * form >= t is maximized up to 1.
 */
inline std::optional<Vec> relatively_open_feasible(std::size_t dim, const std::vector<AffineForm>& equalities,
                                                   const std::vector<AffineForm>& strict) {
    const std::size_t n = dim + 1;  // (x, t)
    Matrix a_le;
    Vec b_le;
    for (const auto& f : strict) {
        Vec row(n);
        for (std::size_t i = 0; i < dim; ++i) row[i] = -f.coeffs[i];
        row[dim] = 1;
        a_le.push_back(std::move(row));
        b_le.push_back(f.constant);
    }
    a_le.push_back(unit_vec(n, dim));
    b_le.push_back(1);
    Matrix a_eq;
    Vec b_eq;
    for (const auto& f : equalities) {
        Vec row(n);
        for (std::size_t i = 0; i < dim; ++i) row[i] = f.coeffs[i];
        a_eq.push_back(std::move(row));
        b_eq.push_back(-f.constant);
    }
    LpResult r = maximize(unit_vec(n, dim), a_le, b_le, a_eq, b_eq);
    if (r.status != LpStatus::optimal || r.value.sign() <= 0) return std::nullopt;
    r.x.pop_back();
    return r.x;
}

}  // namespace dressian
