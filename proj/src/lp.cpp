#include "srlnc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace srlnc {

namespace {
constexpr double kPivotTol = 1e-9;    // reduced-cost threshold
constexpr double kStablePivot = 1e-6;  // smallest pivot element accepted
constexpr double kDriveOutTol = 1e-7;
constexpr double kFeasTol = 1e-9;
constexpr double kResidualLimit = 1e-7;
constexpr int kBlandSwitch = 20000;
constexpr int kMaxIterations = 200000;
}  // namespace

int LinearProgram::add_variable(const std::string& name) {
    names_.push_back(name);
    obj_.push_back(0.0);
    return int(names_.size()) - 1;
}

int LinearProgram::variable(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return int(i);
    return -1;
}

void LinearProgram::add_constraint(std::string name, std::vector<std::pair<int, double>> terms,
                                   Relation rel, double rhs) {
    for (auto& [v, c] : terms)
        if (v < 0 || v >= num_variables())
            throw std::invalid_argument("constraint references undeclared variable");
    cons_.push_back({std::move(name), std::move(terms), rel, rhs});
}

void LinearProgram::set_objective(int var, double coeff) {
    if (var < 0 || var >= num_variables())
        throw std::invalid_argument("objective references undeclared variable");
    obj_[var] = coeff;
}

void LinearProgram::clear_objective() { std::fill(obj_.begin(), obj_.end(), 0.0); }

namespace {

// Tableau simplex. Rows hold the constraint system in equality form with
// rhs kept non-negative; row `m` holds negated reduced costs so that a
// column is improving when its entry is < -kPivotTol.
class Tableau {
  public:
    Tableau(const LinearProgram& lp) : lp_(lp) {
        const int n = lp.num_variables();
        const int m = int(lp.constraints().size());
        n_struct_ = n;
        m_ = m;
        int n_slack = 0;
        for (const auto& c : lp.constraints())
            if (c.rel == Relation::le) ++n_slack;
        n_total_ = n + n_slack + m;  // slack block, then one artificial per row
        art_begin_ = n + n_slack;
        rows_.assign(m + 1, std::vector<double>(n_total_ + 1, 0.0));
        basis_.assign(m, -1);

        int slack = n;
        for (int i = 0; i < m; ++i) {
            const auto& c = lp.constraints()[i];
            auto& row = rows_[i];
            for (auto [v, coeff] : c.terms) row[v] += coeff;
            row[n_total_] = c.rhs;
            if (c.rel == Relation::le) row[slack++] = 1.0;
            if (row[n_total_] < 0)
                for (double& x : row) x = -x;
            row[art_begin_ + i] = 1.0;
            basis_[i] = art_begin_ + i;
        }
    }

    LpStatus run() {
        // Phase 1: maximize minus the artificial sum.
        auto& obj = rows_[m_];
        for (int i = 0; i < m_; ++i) obj[art_begin_ + i] = 1.0;
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j <= n_total_; ++j) obj[j] -= rows_[i][j];
        allow_artificials_ = true;
        if (!iterate()) return LpStatus::infeasible;  // phase 1 cannot be unbounded
        if (-obj[n_total_] > kFeasTol) return LpStatus::infeasible;
        drive_out_artificials();

        // Phase 2 with the real objective.
        std::fill(obj.begin(), obj.end(), 0.0);
        for (int j = 0; j < n_struct_; ++j) obj[j] = -lp_.objective()[j];
        for (int i = 0; i < m_; ++i) {
            double c = obj[basis_[i]];
            if (c != 0.0)
                for (int j = 0; j <= n_total_; ++j) obj[j] -= c * rows_[i][j];
        }
        allow_artificials_ = false;
        if (!iterate()) return LpStatus::unbounded;
        return LpStatus::optimal;
    }

    double objective_value() const { return rows_[m_][n_total_]; }

    std::vector<double> extract() const {
        std::vector<double> x(n_struct_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_struct_) x[basis_[i]] = rows_[i][n_total_];
        return x;
    }

  private:
    bool column_allowed(int j) const {
        return allow_artificials_ || j < art_begin_ || basis_ends_here(j);
    }
    bool basis_ends_here(int j) const {
        for (int i = 0; i < m_; ++i)
            if (basis_[i] == j) return true;
        return false;
    }

    // Entering column by Bland's rule (lowest index with an improving
    // reduced cost). Leaving row by a two-pass ratio test: the exact
    // minimum ratio first, then the numerically largest pivot element
    // among the rows within tolerance of it, ties by lowest basic index.
    // Columns whose only eligible pivots are tiny are skipped; they
    // correspond to numerically unbounded directions of a bounded LP.
    bool iterate() {
        auto& obj = rows_[m_];
        std::vector<char> skip(n_total_, 0);
        int iterations = 0;
        for (;;) {
            if (++iterations > kMaxIterations)
                throw LpNumericalError("simplex iteration limit exceeded");
            int s = -1;
            for (int j = 0; j < n_total_; ++j)
                if (!skip[j] && (allow_artificials_ || j < art_begin_) && obj[j] < -kPivotTol) {
                    s = j;
                    break;
                }
            if (s < 0) return true;

            bool any_positive = false;
            double min_ratio = 0;
            for (int i = 0; i < m_; ++i) {
                double a = rows_[i][s];
                if (a > kPivotTol) {
                    double ratio = rows_[i][n_total_] / a;
                    if (!any_positive || ratio < min_ratio) min_ratio = ratio;
                    any_positive = true;
                }
            }
            if (!any_positive) return false;  // unbounded

            // Past the soft limit fall back to the textbook leaving rule,
            // whose lowest-index tie break cannot cycle.
            const bool bland_only = iterations > kBlandSwitch;
            int r = -1;
            const double window = min_ratio + 1e-9 * (1.0 + std::fabs(min_ratio));
            for (int i = 0; i < m_; ++i) {
                double a = rows_[i][s];
                if (a <= kPivotTol) continue;
                if (rows_[i][n_total_] / a > window) continue;
                if (r < 0) {
                    r = i;
                } else if (bland_only) {
                    if (basis_[i] < basis_[r]) r = i;
                } else if (a > rows_[r][s] || (a == rows_[r][s] && basis_[i] < basis_[r])) {
                    r = i;
                }
            }
            if (!bland_only && rows_[r][s] < kStablePivot) {
                skip[s] = 1;  // no stable pivot in this column
                continue;
            }
            std::fill(skip.begin(), skip.end(), 0);
            pivot(r, s);
        }
    }

    void pivot(int r, int s) {
        auto& row = rows_[r];
        double inv = 1.0 / row[s];
        for (double& x : row) x *= inv;
        row[s] = 1.0;
        for (int i = 0; i <= m_; ++i) {
            if (i == r) continue;
            double f = rows_[i][s];
            if (f == 0.0) continue;
            auto& other = rows_[i];
            for (int j = 0; j <= n_total_; ++j) other[j] -= f * row[j];
            other[s] = 0.0;
        }
        basis_[r] = s;
    }

    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < art_begin_) continue;
            int s = -1;
            for (int j = 0; j < art_begin_; ++j)
                if (std::fabs(rows_[i][j]) > kDriveOutTol) {
                    s = j;
                    break;
                }
            if (s >= 0) pivot(i, s);
            // Otherwise the row is (numerically) redundant; its artificial
            // stays basic at zero and never re-enters elsewhere.
        }
    }

    const LinearProgram& lp_;
    int n_struct_ = 0, m_ = 0, n_total_ = 0, art_begin_ = 0;
    bool allow_artificials_ = true;
    std::vector<std::vector<double>> rows_;
    std::vector<int> basis_;
};

double constraint_value(const LinearProgram::Constraint& c, const std::vector<double>& x) {
    double v = 0;
    for (auto [var, coeff] : c.terms) v += coeff * x[var];
    return v;
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
    Tableau t(lp);
    LpSolution sol;
    sol.status = t.run();
    if (sol.status != LpStatus::optimal) return sol;
    sol.x = t.extract();
    sol.objective = t.objective_value();
    for (const auto& c : lp.constraints()) {
        double v = constraint_value(c, sol.x);
        double viol = c.rel == Relation::le ? std::max(0.0, v - c.rhs) : std::fabs(v - c.rhs);
        sol.max_residual = std::max(sol.max_residual, viol);
    }
    if (sol.max_residual > kResidualLimit)
        throw LpNumericalError("simplex result violates a constraint by " +
                               std::to_string(sol.max_residual));
    return sol;
}

namespace {

void write_terms(std::ostream& out, const LinearProgram& lp,
                 const std::vector<std::pair<int, double>>& terms) {
    // Accumulate repeated variables so the text form is canonical.
    std::map<int, double> acc;
    for (auto [v, c] : terms) acc[v] += c;
    bool first = true;
    for (auto [v, c] : acc) {
        if (c == 0.0) continue;
        if (first) {
            if (c < 0) out << "- ";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        double a = std::fabs(c);
        if (a != 1.0) out << a << " ";
        out << lp.variable_name(v);
    }
    if (first) out << "0 " << lp.variable_name(0);
}

}  // namespace

void write_lp_format(const LinearProgram& lp, std::ostream& out, const std::string& title) {
    if (!title.empty()) out << "\\ " << title << "\n";
    out << "Maximize\n obj: ";
    std::vector<std::pair<int, double>> obj_terms;
    for (int j = 0; j < lp.num_variables(); ++j)
        if (lp.objective()[j] != 0.0) obj_terms.push_back({j, lp.objective()[j]});
    write_terms(out, lp, obj_terms);
    out << "\nSubject To\n";
    int idx = 0;
    for (const auto& c : lp.constraints()) {
        out << " " << (c.name.empty() ? "c" + std::to_string(idx) : c.name) << ": ";
        write_terms(out, lp, c.terms);
        out << (c.rel == Relation::le ? " <= " : " = ") << c.rhs << "\n";
        ++idx;
    }
    out << "Bounds\n";
    for (int j = 0; j < lp.num_variables(); ++j)
        out << " 0 <= " << lp.variable_name(j) << "\n";
    out << "End\n";
}

}  // namespace srlnc
