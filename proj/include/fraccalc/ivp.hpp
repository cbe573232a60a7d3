#pragma once

#include "fraccalc/grid.hpp"
#include "fraccalc/nagumo.hpp"

#include <functional>
#include <vector>

namespace fraccalc {

/// Caputo initial value problem D^alpha y = f(x, y), y(0) = y0 on [0, b],
/// alpha in (0, 1].
struct IvpProblem {
    FracOrder order;
    double b;
    double y0;
    Rhs2D rhs;

    IvpProblem(FracOrder o, double b_, double y0_, Rhs2D r)
        : order(o), b(b_), y0(y0_), rhs(std::move(r))
    {
        if (order.alpha > 1.0)
            throw PreconditionError("ivp: alpha must lie in (0, 1]");
        if (!(b > 0.0) || !std::isfinite(b))
            throw PreconditionError("ivp: need finite b > 0");
        if (!std::isfinite(y0))
            throw PreconditionError("ivp: initial value must be finite");
    }
};

struct IvpSolution {
    Mesh mesh;
    Eigen::ArrayXd y;
    int corrector_sweeps;  // corrector applications per step
    double max_correction; // largest final-sweep update over all steps
};

/// Fractional Adams-Bashforth-Moulton predictor-corrector on a uniform
/// mesh with the given number of steps (PECE; extra corrector sweeps
/// re-evaluate the right-hand side each time). The predictor uses
/// product-rectangle weights, the corrector the product-trapezoidal
/// weights of rl_integral, both on the Volterra form
/// y(x) = y0 + J^alpha f(., y(.))(x).
IvpSolution solve_abm(const IvpProblem& problem, Eigen::Index steps, int corrector_sweeps = 1);

/// Sup over interior nodes (skipping the first five and the endpoints)
/// of |D^alpha y(x_j) - f(x_j, y(x_j))| for a symbolic candidate y.
/// The Caputo derivative comes from the pointwise adaptive route, which
/// tolerates candidates like c*x^alpha whose first derivative blows up
/// at the origin. n is the node count of the verification mesh.
double residual_check(const Ast& candidate, const IvpProblem& problem, Eigen::Index n);

/// Same check for a sampled candidate (typically a solver output); the
/// derivative uses the grid definition route on the candidate's mesh.
double residual_check(const SampledFunction& candidate, const IvpProblem& problem);

struct EocRow {
    Eigen::Index steps;
    double error;    // |y_n(b) - exact(b)|
    double order;    // log2 ratio against the previous row (0 when absent)
    bool has_order;  // false on the first row or next to an exact row
    bool exact;      // error at rounding level
};

/// Error at x = b against a supplied exact solution for each step count,
/// with observed convergence orders between consecutive rows.
std::vector<EocRow> eoc_study(const IvpProblem& problem,
                              const std::function<double(double)>& exact,
                              const std::vector<Eigen::Index>& step_counts);

struct UniquenessReport {
    struct GapRow {
        double eps;
        double sup_gap; // sup of x^-alpha |y_eps(x) - y_0(x)|
    };
    struct FamilyRow {
        double c;
        double residual; // residual_check of the candidate c * x^alpha
    };
    std::vector<GapRow> gaps;
    std::vector<FamilyRow> family; // filled for the built-in discontinuous rhs
    std::string note;
};

/// Solve from y0 and from y0 + eps for each perturbation and report the
/// sup of the uniqueness-gap functional. For the built-in discontinuous
/// right-hand side, additionally report residual_check values for the
/// solution family y = c * x^alpha, c in {0, 0.25, 0.5, 0.75, 1}.
UniquenessReport uniqueness_experiment(const IvpProblem& problem,
                                       const std::vector<double>& perturbations,
                                       Eigen::Index steps);

} // namespace fraccalc
