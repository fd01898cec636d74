#include "qar/spectral_ops.hpp"

#include <complex>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace qar {

namespace {

// The FFTW planner is not re-entrant; execution on private buffers is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

using cvec = std::vector<std::complex<double>>;

cvec forward(const std::vector<double>& in)
{
    const int n = static_cast<int>(in.size());
    std::vector<double> buf(in);
    cvec out(in.size() / 2 + 1);
    fftw_plan p;
    {
        std::lock_guard lock(planner_mutex());
        p = fftw_plan_dft_r2c_1d(n, buf.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    fftw_execute(p);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
    return out;
}

std::vector<double> backward(cvec in, std::size_t n)
{
    std::vector<double> out(n);
    fftw_plan p;
    {
        std::lock_guard lock(planner_mutex());
        p = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(p);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    return out;
}

std::vector<double> padded(const std::vector<double>& x)
{
    std::vector<double> p(2 * x.size(), 0.0);
    std::copy(x.begin(), x.end(), p.begin());
    return p;
}

} // namespace

double trapezoid(const std::vector<double>& f, double h)
{
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t k = 1; k + 1 < f.size(); ++k) s += f[k];
    return s * h;
}

std::vector<double> principal_value(const std::vector<double>& f)
{
    const std::size_t m = f.size();
    std::vector<double> kernel(2 * m, 0.0);
    for (std::size_t k = 1; k < m; k += 2) {
        kernel[k] = 2.0 / static_cast<double>(k);
        kernel[2 * m - k] = -2.0 / static_cast<double>(k);
    }
    return wrapped_convolution(f, kernel);
}

std::vector<double> cross_correlation(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size()) throw std::invalid_argument("cross_correlation: size mismatch");
    const std::size_t l = 2 * x.size();
    cvec fx = forward(padded(x));
    const cvec fy = forward(padded(y));
    for (std::size_t k = 0; k < fx.size(); ++k) fx[k] *= std::conj(fy[k]);
    std::vector<double> c = backward(std::move(fx), l);
    c[x.size()] = 0.0;
    return c;
}

std::vector<double> wrapped_convolution(const std::vector<double>& x, const std::vector<double>& c)
{
    const std::size_t m = x.size();
    if (c.size() != 2 * m) throw std::invalid_argument("wrapped_convolution: kernel must have length 2M");
    cvec fx = forward(padded(x));
    const cvec fc = forward(c);
    for (std::size_t k = 0; k < fx.size(); ++k) fx[k] *= fc[k];
    std::vector<double> out = backward(std::move(fx), 2 * m);
    out.resize(m);
    return out;
}

std::vector<double> time_domain_magnitude(const std::vector<double>& f)
{
    // Even extension f(|w|): no artificial jump at w = 0.
    const std::size_t m = f.size();
    const std::size_t l = 2 * m;
    std::vector<double> e(l, 0.0);
    e[0] = f[0];
    for (std::size_t k = 1; k < m; ++k) e[k] = e[l - k] = f[k];
    e[m] = f[m - 1];
    const cvec ff = forward(e);
    std::vector<double> mag(l);
    for (std::size_t k = 0; k < ff.size(); ++k) {
        mag[k] = std::abs(ff[k]);
        if (k > 0 && k < l - k) mag[l - k] = mag[k];
    }
    return mag;
}

} // namespace qar
