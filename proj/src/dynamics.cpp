#include "qdcascade/dynamics.hpp"

#include <cmath>
#include <string>

namespace qd {

double calibrate_generation(const std::function<RateNetwork(double)>& builder,
                            double lo, double hi, double rel_tol) {
    auto mismatch = [&](double g, double* ix0_out) {
        const RateNetwork net = builder(g);
        const std::vector<double> n = steady_state(net);
        const double ix0 = line_intensity(net, n, Line::x0);
        if (ix0_out != nullptr) *ix0_out = ix0;
        return line_intensity(net, n, Line::xx0) - ix0;
    };

    double flo = mismatch(lo, nullptr);
    const double fhi = mismatch(hi, nullptr);
    if (flo * fhi > 0.0) {
        throw NumericError(
            "calibrate_generation: no balance point in [" + std::to_string(lo) +
            ", " + std::to_string(hi) + "]; intensity mismatch " +
            std::to_string(flo) + " at the lower end, " + std::to_string(fhi) +
            " at the upper end");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        double ix0 = 0.0;
        const double fm = mismatch(mid, &ix0);
        if (std::fabs(fm) <= rel_tol * ix0) {
            return mid;
        }
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    throw NumericError("calibrate_generation: bisection did not reach the "
                       "intensity-balance tolerance in 200 steps");
}

std::vector<std::vector<double>> evolve(const RateNetwork& net,
                                        const std::vector<double>& n0,
                                        int n_steps, double h) {
    Mat r = net.rate_matrix;
    for (double& v : r.a) v *= h;
    const Mat step = expm(r);

    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.push_back(n0);
    std::vector<double> n = n0;
    for (int i = 0; i < n_steps; ++i) {
        n = matvec(step, n);
        out.push_back(n);
    }
    return out;
}

namespace {

// conditional B-line flux after an A emission, at delays 0, h, ..., (npts-1)h
std::vector<double> one_side(const RateNetwork& net, const std::vector<double>& n_ss,
                             const Mat& step, LineSel a, LineSel b, int npts) {
    std::vector<double> n0(static_cast<std::size_t>(net.rate_matrix.n), 0.0);
    for (const Transition& t : net.transitions) {
        if (t.kind == TKind::radiative && t.line == a.line) {
            n0[static_cast<std::size_t>(t.to)] +=
                pol_weight(t.pol, a.pol) * t.rate * n_ss[static_cast<std::size_t>(t.from)];
        }
    }
    double ia = 0.0;
    for (double v : n0) ia += v;
    if (ia <= 0.0) {
        throw NumericError(std::string("g2_trace: conditioning line ") +
                           line_tag(a.line) + "/" + pol_tag(a.pol) +
                           " has zero steady intensity");
    }
    for (double& v : n0) v /= ia;

    const double ib_ss = line_intensity(net, n_ss, b.line, b.pol);
    if (ib_ss <= 0.0) {
        throw NumericError(std::string("g2_trace: target line ") + line_tag(b.line) +
                           "/" + pol_tag(b.pol) + " has zero steady intensity");
    }

    std::vector<double> out(static_cast<std::size_t>(npts));
    std::vector<double> n = n0;
    for (int i = 0; i < npts; ++i) {
        out[static_cast<std::size_t>(i)] = line_intensity(net, n, b.line, b.pol) / ib_ss;
        n = matvec(step, n);
    }
    return out;
}

}  // namespace

CorrelationTrace g2_trace(const RateNetwork& net, LineSel a, LineSel b,
                          double tau_max, double tau_step) {
    if (tau_step <= 0.0 || tau_max < tau_step) {
        throw NumericError("g2_trace: need 0 < tau_step <= tau_max");
    }
    const int nside = static_cast<int>(std::llround(tau_max / tau_step));

    const std::vector<double> n_ss = steady_state(net);
    Mat r = net.rate_matrix;
    for (double& v : r.a) v *= tau_step;
    const Mat step = expm(r);

    // positive delays condition on A; negative delays swap the roles, so the
    // slot at -tau carries the swapped-role value at delay +tau and a
    // same-line/same-analyzer trace is exactly symmetric about zero
    const std::vector<double> pos = one_side(net, n_ss, step, a, b, nside + 1);
    const std::vector<double> neg = one_side(net, n_ss, step, b, a, nside + 1);

    CorrelationTrace tr;
    tr.a = a;
    tr.b = b;
    tr.tau.resize(static_cast<std::size_t>(2 * nside + 1));
    tr.g2.resize(static_cast<std::size_t>(2 * nside + 1));
    for (int i = 0; i <= 2 * nside; ++i) {
        tr.tau[static_cast<std::size_t>(i)] = (i - nside) * tau_step;
        tr.g2[static_cast<std::size_t>(i)] =
            i < nside ? neg[static_cast<std::size_t>(nside - i)]
                      : pos[static_cast<std::size_t>(i - nside)];
    }
    return tr;
}

void convolve_response(CorrelationTrace& trace, double fwhm) {
    if (fwhm <= 0.0) {
        trace.convolved.clear();
        trace.fwhm = 0.0;
        return;
    }
    const double h = trace.tau[1] - trace.tau[0];
    if (h > fwhm / 4.0) {
        throw NumericError("convolve_response: grid step " + std::to_string(h) +
                           " ps too coarse for a " + std::to_string(fwhm) +
                           " ps response (need step <= fwhm/4)");
    }
    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const int kk = static_cast<int>(std::ceil(4.0 * sigma / h));
    std::vector<double> w(static_cast<std::size_t>(2 * kk + 1));
    double wsum = 0.0;
    for (int j = -kk; j <= kk; ++j) {
        const double u = j * h;
        w[static_cast<std::size_t>(j + kk)] = std::exp(-u * u / (2.0 * sigma * sigma));
        wsum += w[static_cast<std::size_t>(j + kk)];
    }
    for (double& v : w) v /= wsum;

    const int n = static_cast<int>(trace.g2.size());
    trace.convolved.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = -kk; j <= kk; ++j) {
            // constant extension beyond the trace edges
            int idx = i + j;
            if (idx < 0) idx = 0;
            if (idx >= n) idx = n - 1;
            s += w[static_cast<std::size_t>(j + kk)] * trace.g2[static_cast<std::size_t>(idx)];
        }
        trace.convolved[static_cast<std::size_t>(i)] = s;
    }
    trace.fwhm = fwhm;
}

}  // namespace qd
