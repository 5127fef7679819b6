#pragma once
#include <stdexcept>
#include <vector>

namespace qd {

// Raised when an iterative numeric routine fails to converge or a solve hits a
// singular system.  The CLI maps it to its numeric-failure exit code.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Small dense row-major matrix; all problem sizes here are 15 or 17.
struct Mat {
    int n = 0;
    std::vector<double> a;

    Mat() = default;
    explicit Mat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static Mat identity(int n);
};

Mat matmul(const Mat& A, const Mat& B);
std::vector<double> matvec(const Mat& A, const std::vector<double>& x);
double frob_norm(const Mat& A);
double offdiag_frob_norm(const Mat& A);

struct JacobiResult {
    std::vector<double> values;  // ascending
    Mat vectors;                 // columns, orthonormal, largest-|component| positive
    int sweeps;
};

// Cyclic Jacobi for real symmetric matrices.  Converged when the off-diagonal
// Frobenius norm drops below tol * ||A||_F; throws NumericError at the sweep cap.
JacobiResult jacobi_eigh(const Mat& A, double tol = 1e-12, int max_sweeps = 100);

// In-place partial-pivot LU solve; throws NumericError on a singular pivot.
std::vector<double> solve_linear(Mat A, std::vector<double> b);

// Matrix exponential by scaling and squaring with a Taylor series on the
// scaled-down matrix.  Plenty for the well-conditioned rate matrices used here.
Mat expm(const Mat& A);

}  // namespace qd
