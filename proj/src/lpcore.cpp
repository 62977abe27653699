#include "fairwire/lpcore.hpp"

#include "fairwire/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace fairwire {

void LinearProgram::add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    rows.push_back({std::move(coeffs), rel, std::move(rhs)});
}

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
        case LpStatus::failed: return "failed";
    }
    return "?";
}

namespace {

template <typename Num>
struct NumTraits;

template <>
struct NumTraits<Rational> {
    static Rational eps() { return Rational(0); }
    static Rational from(const Rational& q) { return q; }
    static Rational back(const Rational& v) { return v; }
    static constexpr int max_iterations = 1 << 20;
};

template <>
struct NumTraits<double> {
    static double eps() { return 1e-9; }
    static double from(const Rational& q) { return to_double(q); }
    static Rational back(double v) { return rational_from_double(v); }
    static constexpr int max_iterations = 200000;
};

// Dense two-phase tableau simplex for `maximize c·x, rows, x >= 0`.
// Every declared row gets a marker column (slack for <=, artificial for
// >= and =); after phase 2 the reduced cost of row r's marker equals the
// dual of the normalized row r.
template <typename Num>
class SimplexEngine {
  public:
    explicit SimplexEngine(const LinearProgram& lp) : lp_(lp) { build(); }

    LpSolution run() {
        LpSolution out;

        // Phase 1: drive artificials to zero (maximize their negated sum).
        if (!artificials_.empty()) {
            costs_.assign(num_cols_, Num(0));
            for (int col : artificials_) costs_[static_cast<std::size_t>(col)] = Num(-1);
            rebuild_reduced_costs();
            const Status st = iterate(/*allow_artificials=*/true);
            if (st != Status::optimal) return finish_failed(out);
            Num infeas = Num(0);
            for (int r = 0; r < num_rows_; ++r)
                if (is_artificial_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])])
                    infeas += b_[static_cast<std::size_t>(r)];
            if (infeas > NumTraits<Num>::eps()) {
                out.status = LpStatus::infeasible;
                out.iterations = iterations_;
                return out;
            }
            pivot_out_basic_artificials();
        }

        // Phase 2: original objective, artificial columns barred.
        costs_.assign(num_cols_, Num(0));
        for (int j = 0; j < lp_.num_vars; ++j)
            costs_[static_cast<std::size_t>(j)] = NumTraits<Num>::from(
                lp_.objective[static_cast<std::size_t>(j)]);
        rebuild_reduced_costs();
        switch (iterate(/*allow_artificials=*/false)) {
            case Status::optimal: break;
            case Status::unbounded:
                out.status = LpStatus::unbounded;
                out.iterations = iterations_;
                return out;
            case Status::iteration_cap: return finish_failed(out);
        }

        return extract(out);
    }

  private:
    enum class Status { optimal, unbounded, iteration_cap };

    void build() {
        const int declared = static_cast<int>(lp_.rows.size());
        for (const auto& row : lp_.rows)
            if (static_cast<int>(row.coeffs.size()) != lp_.num_vars)
                throw InputError("LP row has wrong coefficient count");
        if (static_cast<int>(lp_.objective.size()) != lp_.num_vars)
            throw InputError("LP objective has wrong length");
        if (!lp_.upper_bounds.empty() &&
            static_cast<int>(lp_.upper_bounds.size()) != lp_.num_vars)
            throw InputError("LP upper bound list has wrong length");

        struct NormRow {
            std::vector<Num> coeffs;
            Relation rel;
            Num rhs;
            bool flipped;
        };
        std::vector<NormRow> norm;
        auto push_row = [&](const std::vector<Rational>& coeffs, Relation rel,
                            const Rational& rhs) {
            NormRow r;
            r.coeffs.resize(static_cast<std::size_t>(lp_.num_vars));
            for (int j = 0; j < lp_.num_vars; ++j)
                r.coeffs[static_cast<std::size_t>(j)] =
                    NumTraits<Num>::from(coeffs[static_cast<std::size_t>(j)]);
            r.rel = rel;
            r.rhs = NumTraits<Num>::from(rhs);
            r.flipped = false;
            if (r.rhs < Num(0)) {
                for (auto& c : r.coeffs) c = -c;
                r.rhs = -r.rhs;
                r.rel = rel == Relation::le ? Relation::ge
                                            : (rel == Relation::ge ? Relation::le : Relation::eq);
                r.flipped = true;
            }
            norm.push_back(std::move(r));
        };
        for (const auto& row : lp_.rows) push_row(row.coeffs, row.rel, row.rhs);
        for (int j = 0; j < lp_.num_vars; ++j) {
            if (lp_.upper_bounds.empty() || !lp_.upper_bounds[static_cast<std::size_t>(j)])
                continue;
            std::vector<Rational> coeffs(static_cast<std::size_t>(lp_.num_vars), Rational(0));
            coeffs[static_cast<std::size_t>(j)] = 1;
            push_row(coeffs, Relation::le, *lp_.upper_bounds[static_cast<std::size_t>(j)]);
        }

        num_rows_ = static_cast<int>(norm.size());
        declared_rows_ = declared;
        int cols = lp_.num_vars;
        for (const auto& r : norm) cols += r.rel == Relation::ge ? 2 : 1;
        num_cols_ = cols;

        a_.assign(static_cast<std::size_t>(num_rows_),
                  std::vector<Num>(static_cast<std::size_t>(num_cols_), Num(0)));
        b_.resize(static_cast<std::size_t>(num_rows_));
        basis_.resize(static_cast<std::size_t>(num_rows_));
        marker_col_.resize(static_cast<std::size_t>(num_rows_));
        flipped_.resize(static_cast<std::size_t>(num_rows_));
        is_artificial_.assign(static_cast<std::size_t>(num_cols_), 0);

        int next = lp_.num_vars;
        for (int r = 0; r < num_rows_; ++r) {
            auto& row = norm[static_cast<std::size_t>(r)];
            for (int j = 0; j < lp_.num_vars; ++j)
                a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                    row.coeffs[static_cast<std::size_t>(j)];
            b_[static_cast<std::size_t>(r)] = row.rhs;
            flipped_[static_cast<std::size_t>(r)] = row.flipped;
            if (row.rel == Relation::le) {
                a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(next)] = Num(1);
                basis_[static_cast<std::size_t>(r)] = next;
                marker_col_[static_cast<std::size_t>(r)] = next;
                ++next;
            } else {
                if (row.rel == Relation::ge) {
                    a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(next)] = Num(-1);
                    ++next;  // surplus
                }
                a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(next)] = Num(1);
                is_artificial_[static_cast<std::size_t>(next)] = 1;
                artificials_.push_back(next);
                basis_[static_cast<std::size_t>(r)] = next;
                marker_col_[static_cast<std::size_t>(r)] = next;
                ++next;
            }
        }
    }

    void rebuild_reduced_costs() {
        // reduced[j] = c_B · B^{-1} A_j - c_j, computed from the current tableau
        reduced_.assign(static_cast<std::size_t>(num_cols_), Num(0));
        for (int j = 0; j < num_cols_; ++j) {
            Num v = -costs_[static_cast<std::size_t>(j)];
            for (int r = 0; r < num_rows_; ++r) {
                const Num& cb = costs_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])];
                if (cb != Num(0))
                    v += cb * a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
            }
            reduced_[static_cast<std::size_t>(j)] = v;
        }
    }

    Status iterate(bool allow_artificials) {
        const Num eps = NumTraits<Num>::eps();
        for (;;) {
            if (iterations_ >= NumTraits<Num>::max_iterations) return Status::iteration_cap;
            // Bland: lowest-index improving column.
            int entering = -1;
            for (int j = 0; j < num_cols_; ++j) {
                if (!allow_artificials && is_artificial_[static_cast<std::size_t>(j)]) continue;
                if (reduced_[static_cast<std::size_t>(j)] < -eps) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return Status::optimal;

            int leaving = -1;
            Num best_ratio = Num(0);
            for (int r = 0; r < num_rows_; ++r) {
                const Num& pivot = a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(entering)];
                if (pivot <= eps) continue;
                const Num ratio = b_[static_cast<std::size_t>(r)] / pivot;
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[static_cast<std::size_t>(r)] <
                                                basis_[static_cast<std::size_t>(leaving)])) {
                    leaving = r;
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) return Status::unbounded;
            pivot(leaving, entering);
            ++iterations_;
        }
    }

    void pivot(int r, int s) {
        auto& prow = a_[static_cast<std::size_t>(r)];
        const Num inv = Num(1) / prow[static_cast<std::size_t>(s)];
        if (inv != Num(1))
            for (auto& v : prow) v *= inv;
        b_[static_cast<std::size_t>(r)] *= inv;
        prow[static_cast<std::size_t>(s)] = Num(1);

        for (int i = 0; i < num_rows_; ++i) {
            if (i == r) continue;
            auto& row = a_[static_cast<std::size_t>(i)];
            const Num factor = row[static_cast<std::size_t>(s)];
            if (factor == Num(0)) continue;
            for (int j = 0; j < num_cols_; ++j) {
                const Num& p = prow[static_cast<std::size_t>(j)];
                if (p != Num(0)) row[static_cast<std::size_t>(j)] -= factor * p;
            }
            row[static_cast<std::size_t>(s)] = Num(0);
            b_[static_cast<std::size_t>(i)] -= factor * b_[static_cast<std::size_t>(r)];
        }
        const Num zfactor = reduced_[static_cast<std::size_t>(s)];
        if (zfactor != Num(0)) {
            for (int j = 0; j < num_cols_; ++j) {
                const Num& p = prow[static_cast<std::size_t>(j)];
                if (p != Num(0)) reduced_[static_cast<std::size_t>(j)] -= zfactor * p;
            }
            reduced_[static_cast<std::size_t>(s)] = Num(0);
        }
        basis_[static_cast<std::size_t>(r)] = s;
    }

    void pivot_out_basic_artificials() {
        const Num eps = NumTraits<Num>::eps();
        for (int r = 0; r < num_rows_; ++r) {
            const int col = basis_[static_cast<std::size_t>(r)];
            if (!is_artificial_[static_cast<std::size_t>(col)]) continue;
            int replacement = -1;
            for (int j = 0; j < num_cols_; ++j) {
                if (is_artificial_[static_cast<std::size_t>(j)]) continue;
                Num v = a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
                if (v < Num(0)) v = -v;
                if (v > eps) {
                    replacement = j;
                    break;
                }
            }
            // A fully zero row is redundant; its artificial stays basic at 0.
            if (replacement >= 0) pivot(r, replacement);
        }
    }

    LpSolution finish_failed(LpSolution& out) {
        out.status = LpStatus::failed;
        out.iterations = iterations_;
        return out;
    }

    LpSolution extract(LpSolution& out) {
        std::vector<Num> x(static_cast<std::size_t>(lp_.num_vars), Num(0));
        for (int r = 0; r < num_rows_; ++r) {
            const int col = basis_[static_cast<std::size_t>(r)];
            if (col < lp_.num_vars)
                x[static_cast<std::size_t>(col)] = b_[static_cast<std::size_t>(r)];
        }

        // Feasibility self-check: exact in rational mode, tolerance in float.
        const Num eps = NumTraits<Num>::eps();
        for (const auto& v : x)
            if (v < -eps) return finish_failed(out);
        for (std::size_t r = 0; r < lp_.rows.size(); ++r) {
            const auto& row = lp_.rows[r];
            Num lhs = Num(0);
            for (int j = 0; j < lp_.num_vars; ++j)
                lhs += NumTraits<Num>::from(row.coeffs[static_cast<std::size_t>(j)]) *
                       x[static_cast<std::size_t>(j)];
            const Num rhs = NumTraits<Num>::from(row.rhs);
            Num scale = rhs < Num(0) ? -rhs : rhs;
            const Num tol = eps * (Num(1) + scale);
            const bool ok = row.rel == Relation::le   ? lhs <= rhs + tol
                            : row.rel == Relation::ge ? lhs >= rhs - tol
                                                      : (lhs - rhs <= tol && rhs - lhs <= tol);
            if (!ok) return finish_failed(out);
        }

        out.status = LpStatus::optimal;
        out.iterations = iterations_;
        out.primal.reserve(x.size());
        for (const auto& v : x) out.primal.push_back(NumTraits<Num>::back(v));
        out.objective = Rational(0);
        for (int j = 0; j < lp_.num_vars; ++j)
            out.objective += lp_.objective[static_cast<std::size_t>(j)] *
                             out.primal[static_cast<std::size_t>(j)];
        out.duals.reserve(static_cast<std::size_t>(declared_rows_));
        for (int r = 0; r < declared_rows_; ++r) {
            Num y = reduced_[static_cast<std::size_t>(marker_col_[static_cast<std::size_t>(r)])];
            if (flipped_[static_cast<std::size_t>(r)]) y = -y;
            out.duals.push_back(NumTraits<Num>::back(y));
        }
        return out;
    }

    const LinearProgram& lp_;
    int num_rows_ = 0;
    int num_cols_ = 0;
    int declared_rows_ = 0;
    int iterations_ = 0;
    std::vector<std::vector<Num>> a_;
    std::vector<Num> b_;
    std::vector<Num> costs_;
    std::vector<Num> reduced_;
    std::vector<int> basis_;
    std::vector<int> marker_col_;
    std::vector<char> flipped_;
    std::vector<char> is_artificial_;
    std::vector<int> artificials_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) { return SimplexEngine<Rational>(lp).run(); }

LpSolution solve_lp_float(const LinearProgram& lp) { return SimplexEngine<double>(lp).run(); }

}  // namespace fairwire
