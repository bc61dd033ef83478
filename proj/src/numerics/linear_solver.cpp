#include "hydrogeo/numerics/linear_solver.hpp"

#include "hydrogeo/core/errors.hpp"

#include <string>

namespace hydrogeo {

void SparseDirectSolver::analyze(const SparseMatrix& a)
{
    lu_.analyzePattern(a);
    analyzed_ = true;
}

void SparseDirectSolver::factorize(const SparseMatrix& a)
{
    if (!analyzed_)
        analyze(a);
    lu_.factorize(a);
    if (lu_.info() != Eigen::Success)
        throw SolverError("sparse LU factorization failed: " + lu_.lastErrorMessage());
    matrix_ = &a;
}

Eigen::VectorXd SparseDirectSolver::solve(const Eigen::VectorXd& b) const
{
    if (matrix_ == nullptr)
        throw SolverError("solve called before factorize");
    const double bnorm = b.norm();
    Eigen::VectorXd x = lu_.solve(b);
    if (bnorm == 0.0) {
        last_residual_ = 0.0;
        return x;
    }
    Eigen::VectorXd r = b - (*matrix_) * x;
    last_residual_ = r.norm() / bnorm;
    for (int k = 0; k < 2 && last_residual_ > 1e-12; ++k) {
        x += lu_.solve(r);
        r = b - (*matrix_) * x;
        last_residual_ = r.norm() / bnorm;
    }
    if (!(last_residual_ <= 1e-8))
        throw SolverError("linear solve residual " + std::to_string(last_residual_) + " exceeds 1e-8");
    return x;
}

} // namespace hydrogeo
