#include "qdcascade/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qd {

Mat Mat::identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat matmul(const Mat& A, const Mat& B) {
    Mat C(A.n);
    for (int i = 0; i < A.n; ++i) {
        for (int k = 0; k < A.n; ++k) {
            const double aik = A(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < A.n; ++j) {
                C(i, j) += aik * B(k, j);
            }
        }
    }
    return C;
}

std::vector<double> matvec(const Mat& A, const std::vector<double>& x) {
    std::vector<double> y(static_cast<std::size_t>(A.n), 0.0);
    for (int i = 0; i < A.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.n; ++j) s += A(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

double frob_norm(const Mat& A) {
    double s = 0.0;
    for (double v : A.a) s += v * v;
    return std::sqrt(s);
}

double offdiag_frob_norm(const Mat& A) {
    double s = 0.0;
    for (int i = 0; i < A.n; ++i) {
        for (int j = 0; j < A.n; ++j) {
            if (i != j) s += A(i, j) * A(i, j);
        }
    }
    return std::sqrt(s);
}

JacobiResult jacobi_eigh(const Mat& A, double tol, int max_sweeps) {
    const int n = A.n;
    Mat work = A;
    Mat V = Mat::identity(n);
    const double thresh = tol * frob_norm(A);

    int sweeps = 0;
    while (offdiag_frob_norm(work) > thresh) {
        if (sweeps >= max_sweeps) {
            throw NumericError("jacobi_eigh: no convergence after " +
                               std::to_string(max_sweeps) + " sweeps (off-diagonal " +
                               std::to_string(offdiag_frob_norm(work)) + ")");
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = work(p, q);
                if (apq == 0.0) continue;
                const double theta = (work(q, q) - work(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                work(p, p) -= t * apq;
                work(q, q) += t * apq;
                work(p, q) = 0.0;
                work(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = work(k, p);
                    const double akq = work(k, q);
                    work(k, p) = akp - s * (akq + tau * akp);
                    work(p, k) = work(k, p);
                    work(k, q) = akq + s * (akp - tau * akq);
                    work(q, k) = work(k, q);
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p);
                    const double vkq = V(k, q);
                    V(k, p) = vkp - s * (vkq + tau * vkp);
                    V(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
        ++sweeps;
    }

    // ascending eigenvalue order with the vectors permuted alongside
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return work(i, i) < work(j, j); });

    JacobiResult r;
    r.values.resize(static_cast<std::size_t>(n));
    r.vectors = Mat(n);
    r.sweeps = sweeps;
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        r.values[static_cast<std::size_t>(j)] = work(src, src);
        int kmax = 0;
        double amax = 0.0;
        for (int i = 0; i < n; ++i) {
            const double av = std::fabs(V(i, src));
            if (av > amax) {
                amax = av;
                kmax = i;
            }
        }
        const double sign = V(kmax, src) < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) {
            r.vectors(i, j) = sign * V(i, src);
        }
    }
    return r;
}

std::vector<double> solve_linear(Mat A, std::vector<double> b) {
    const int n = A.n;
    std::vector<int> piv(static_cast<std::size_t>(n));
    std::iota(piv.begin(), piv.end(), 0);
    for (int col = 0; col < n; ++col) {
        int best = col;
        double bmag = std::fabs(A(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double m = std::fabs(A(r, col));
            if (m > bmag) {
                bmag = m;
                best = r;
            }
        }
        if (bmag == 0.0) {
            throw NumericError("solve_linear: singular pivot at column " +
                               std::to_string(col));
        }
        if (best != col) {
            for (int j = 0; j < n; ++j) std::swap(A(col, j), A(best, j));
            std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(best)]);
        }
        const double d = A(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = A(r, col) / d;
            if (f == 0.0) continue;
            A(r, col) = 0.0;
            for (int j = col + 1; j < n; ++j) A(r, j) -= f * A(col, j);
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[static_cast<std::size_t>(r)];
        for (int j = r + 1; j < n; ++j) s -= A(r, j) * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(r)] = s / A(r, r);
    }
    return b;
}

Mat expm(const Mat& A) {
    const int n = A.n;
    double norm = 0.0;  // infinity norm
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::fabs(A(i, j));
        norm = std::max(norm, row);
    }
    int s = 0;
    if (norm > 0.5) {
        s = static_cast<int>(std::ceil(std::log2(norm))) + 1;
    }
    Mat B = A;
    const double scale = std::ldexp(1.0, -s);
    for (double& v : B.a) v *= scale;

    Mat result = Mat::identity(n);
    Mat term = Mat::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = matmul(term, B);
        const double f = 1.0 / k;
        double tmag = 0.0;
        for (int idx = 0; idx < n * n; ++idx) {
            term.a[static_cast<std::size_t>(idx)] *= f;
            tmag = std::max(tmag, std::fabs(term.a[static_cast<std::size_t>(idx)]));
        }
        for (int idx = 0; idx < n * n; ++idx) {
            result.a[static_cast<std::size_t>(idx)] += term.a[static_cast<std::size_t>(idx)];
        }
        if (tmag < 1e-16) break;
    }
    for (int k = 0; k < s; ++k) result = matmul(result, result);
    return result;
}

}  // namespace qd
