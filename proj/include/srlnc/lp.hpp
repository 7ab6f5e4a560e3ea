#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srlnc {

enum class Relation { le, eq };
enum class LpStatus { optimal, infeasible, unbounded };

// Dense LP over named non-negative variables, maximization sense.
class LinearProgram {
  public:
    struct Constraint {
        std::string name;
        std::vector<std::pair<int, double>> terms;
        Relation rel;
        double rhs;
    };

    int add_variable(const std::string& name);
    int variable(const std::string& name) const;  // -1 if absent
    const std::string& variable_name(int i) const { return names_[i]; }
    int num_variables() const { return int(names_.size()); }

    void add_constraint(std::string name, std::vector<std::pair<int, double>> terms,
                        Relation rel, double rhs);
    const std::vector<Constraint>& constraints() const { return cons_; }

    void set_objective(int var, double coeff);
    void clear_objective();
    const std::vector<double>& objective() const { return obj_; }

  private:
    std::vector<std::string> names_;
    std::vector<Constraint> cons_;
    std::vector<double> obj_;
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double objective = 0;
    std::vector<double> x;
    double max_residual = 0;  // post-solve constraint violation
};

// Primal two-phase dense simplex with Bland's anti-cycling rule.
// Deterministic for a fixed program. Throws LpNumericalError when the
// reported optimum violates a constraint beyond 1e-7.
struct LpNumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LpSolution solve(const LinearProgram& lp);

// Writes the program in LP text format (objective, constraints, bounds).
void write_lp_format(const LinearProgram& lp, std::ostream& out,
                     const std::string& title = "");

}  // namespace srlnc
