#include "fraccalc/ivp.hpp"
#include "fraccalc/operators.hpp"
#include "fraccalc/special.hpp"

#include <cmath>
#include <string>

namespace fraccalc {

IvpSolution solve_abm(const IvpProblem& problem, Eigen::Index steps, int corrector_sweeps)
{
    if (steps < 1 || steps > (Eigen::Index{1} << 20))
        throw PreconditionError("solve_abm: steps must lie in [1, 2^20]");
    if (corrector_sweeps < 1 || corrector_sweeps > 10)
        throw PreconditionError("solve_abm: corrector sweeps must lie in [1, 10]");

    const double alpha = problem.order.alpha;
    const Mesh mesh(0.0, problem.b, steps + 1);
    const double h = mesh.h;
    const double ha = std::pow(h, alpha);
    const double ga1 = gammafn(alpha + 1.0);
    const double ga2 = gammafn(alpha + 2.0);

    Eigen::ArrayXd pow_a(steps + 1), pow_a1(steps + 1);
    for (Eigen::Index k = 0; k <= steps; ++k) {
        pow_a[k] = std::pow(static_cast<double>(k), alpha);
        pow_a1[k] = std::pow(static_cast<double>(k), alpha + 1.0);
    }
    Eigen::ArrayXd corr_interior(steps + 1);
    for (Eigen::Index k = 1; k < steps; ++k)
        corr_interior[k] = pow_a1[k + 1] - 2.0 * pow_a1[k] + pow_a1[k - 1];

    Eigen::ArrayXd y(steps + 1), fh(steps + 1);
    y[0] = problem.y0;
    fh[0] = problem.rhs(0.0, problem.y0);
    if (!std::isfinite(fh[0]))
        throw NumericError("solve_abm: non-finite right-hand side at step 0");

    double max_correction = 0.0;
    for (Eigen::Index j = 0; j + 1 <= steps; ++j) {
        const Eigen::Index target = j + 1;
        const double jd = static_cast<double>(target);

        // History sums in ascending node index: product-rectangle weights
        // for the predictor, product-trapezoidal hat moments for the
        // corrector.
        double acc_p = (pow_a[target] - pow_a[target - 1]) * fh[0];
        double acc_c = (pow_a1[target - 1] - pow_a[target] * (jd - 1.0 - alpha)) * fh[0];
        for (Eigen::Index i = 1; i <= j; ++i) {
            acc_p += (pow_a[target - i] - pow_a[target - 1 - i]) * fh[i];
            acc_c += corr_interior[target - i] * fh[i];
        }

        const double predicted = problem.y0 + ha / ga1 * acc_p;
        const double t = mesh.node(target);
        double estimate = predicted;
        double f_at_estimate = problem.rhs(t, estimate);
        double correction = 0.0;
        for (int sweep = 0; sweep < corrector_sweeps; ++sweep) {
            const double corrected = problem.y0 + ha / ga2 * (acc_c + f_at_estimate);
            correction = std::abs(corrected - estimate);
            estimate = corrected;
            f_at_estimate = problem.rhs(t, estimate);
        }
        if (!std::isfinite(estimate) || !std::isfinite(f_at_estimate))
            throw NumericError("solve_abm: non-finite value at step " + std::to_string(target));
        max_correction = std::max(max_correction, correction);
        y[target] = estimate;
        fh[target] = f_at_estimate;
    }
    return IvpSolution{mesh, std::move(y), corrector_sweeps, max_correction};
}

double residual_check(const Ast& candidate, const IvpProblem& problem, Eigen::Index n)
{
    if (n < 9)
        throw PreconditionError("residual_check: mesh too small for the residual window");
    const Mesh mesh(0.0, problem.b, n);
    double sup = 0.0;
    for (Eigen::Index j = 6; j + 1 < n; ++j) {
        const double x = mesh.node(j);
        const double d = caputo_pointwise(candidate, problem.order, 0.0, x);
        const double r = std::abs(d - problem.rhs(x, eval(candidate, x)));
        sup = std::max(sup, r);
    }
    return sup;
}

double residual_check(const SampledFunction& candidate, const IvpProblem& problem)
{
    const Mesh& mesh = candidate.mesh;
    if (mesh.a != 0.0 || mesh.b != problem.b)
        throw PreconditionError("residual_check: candidate mesh does not cover [0, b]");
    if (mesh.n < 9)
        throw PreconditionError("residual_check: mesh too small for the residual window");

    const TaylorPoly t0(0.0, Eigen::VectorXd::Constant(1, candidate.values[0]));
    const SampledFunction d = caputo_definition(candidate, problem.order, t0);

    double sup = 0.0;
    for (Eigen::Index j = 6; j + 1 < mesh.n; ++j) {
        const double x = mesh.node(j);
        const double r = std::abs(d.values[j] - problem.rhs(x, candidate.values[j]));
        sup = std::max(sup, r);
    }
    return sup;
}

std::vector<EocRow> eoc_study(const IvpProblem& problem,
                              const std::function<double(double)>& exact,
                              const std::vector<Eigen::Index>& step_counts)
{
    if (step_counts.empty())
        throw PreconditionError("eoc_study: need at least one step count");
    for (std::size_t i = 1; i < step_counts.size(); ++i)
        if (step_counts[i] <= step_counts[i - 1])
            throw PreconditionError("eoc_study: step counts must be strictly ascending");

    const double reference = exact(problem.b);
    const double rounding_floor = 1e-13 * (1.0 + std::abs(reference));

    std::vector<EocRow> rows;
    rows.reserve(step_counts.size());
    for (std::size_t i = 0; i < step_counts.size(); ++i) {
        const Eigen::Index steps = step_counts[i];
        const IvpSolution sol = solve_abm(problem, steps);
        const double err = std::abs(sol.y[steps] - reference);
        EocRow row{steps, err, 0.0, false, err <= rounding_floor};
        if (i > 0) {
            const EocRow& prev = rows.back();
            if (!row.exact && !prev.exact && prev.error > 0.0 && err > 0.0) {
                row.order = std::log(prev.error / err) /
                            std::log(static_cast<double>(steps) / static_cast<double>(prev.steps));
                row.has_order = true;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

UniquenessReport uniqueness_experiment(const IvpProblem& problem,
                                       const std::vector<double>& perturbations,
                                       Eigen::Index steps)
{
    if (!(problem.order.alpha < 1.0))
        throw PreconditionError("uniqueness_experiment: alpha must lie in (0, 1)");

    const IvpSolution base = solve_abm(problem, steps);
    const SampledFunction base_fn(base.mesh, base.y);

    UniquenessReport report;
    report.note =
        "discrete certificate: residuals and gap functionals on a finite mesh only; "
        "continuity of the fractional derivative of a solution is not certified";

    for (double eps : perturbations) {
        IvpProblem perturbed(problem.order, problem.b, problem.y0 + eps, problem.rhs);
        const IvpSolution sol = solve_abm(perturbed, steps);
        const SampledFunction gap =
            uniqueness_gap(base_fn, SampledFunction(sol.mesh, sol.y), problem.order);
        report.gaps.push_back({eps, gap.values.maxCoeff()});
    }

    if (problem.rhs.is_counterexample()) {
        const double alpha = problem.order.alpha;
        for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const AstPtr candidate = simplify(Ast::make_binary(
                AstKind::Mul, Ast::make_number(c),
                Ast::make_binary(AstKind::Pow, Ast::make_variable('x'),
                                 Ast::make_number(alpha))));
            report.family.push_back({c, residual_check(*candidate, problem, steps + 1)});
        }
    }
    return report;
}

} // namespace fraccalc
