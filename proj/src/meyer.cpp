#include "hsim/meyer.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "hsim/errors.hpp"

namespace hsim::meyer {

double nu(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double x2 = x * x;
    return x2 * x2 * (35.0 - 84.0 * x + 70.0 * x2 - 20.0 * x2 * x);
}

double eval_phi_hat(double xi) {
    if (!std::isfinite(xi)) throw domain_error("eval_phi_hat: non-finite frequency");
    double a = std::fabs(xi);
    if (a <= flat_edge) return 1.0;
    if (a >= support_edge) return 0.0;
    return std::cos(0.5 * pi * nu(3.0 * a / (2.0 * pi) - 1.0));
}

double sinc_half(double xi) {
    double h = 0.5 * xi;
    if (std::fabs(h) < 1e-8) return 1.0 - h * h / 6.0;
    return std::sin(h) / h;
}

std::complex<double> eval_frac_scaling_hat(double delta, double xi) {
    if (!std::isfinite(xi) || !std::isfinite(delta))
        throw domain_error("eval_frac_scaling_hat: non-finite input");
    double w = eval_phi_hat(xi);
    if (w == 0.0) return {0.0, 0.0};
    if (xi == 0.0) return {1.0, 0.0};
    // (1 - e^{-i xi})/(i xi) = e^{-i xi/2} sin(xi/2)/(xi/2); on the support
    // |xi| < 2pi so the sinc factor is positive and the branch is continuous.
    double mag = std::pow(sinc_half(xi), delta) * w;
    return std::polar(mag, -0.5 * delta * xi);
}

std::vector<double> lowpass_taps(int half_width) {
    if (half_width < 0) throw parameter_error("lowpass_taps: negative width");
    using rule = boost::math::quadrature::gauss<double, 32>;
    // phi_hat(2 xi) is 1 on [0, pi/3] and decays on [pi/3, 2pi/3]
    const double lo = pi / 3.0, hi = 2.0 * pi / 3.0;
    const int panels = 16 + half_width / 4;
    std::vector<double> taps(2 * half_width + 1);
    for (int n = 0; n <= half_width; ++n) {
        double flat = n == 0 ? lo : std::sin(n * lo) / n;
        double trans = 0.0;
        double w = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            double a = lo + p * w;
            trans += rule::integrate(
                [n](double xi) { return eval_phi_hat(2.0 * xi) * std::cos(n * xi); }, a, a + w);
        }
        double h = std::sqrt(2.0) / pi * (flat + trans);
        taps[half_width + n] = h;
        taps[half_width - n] = h;
    }
    return taps;
}

}  // namespace hsim::meyer
