#include "rydconv/photonstats.hpp"

#include "rydconv/constants.hpp"
#include "rydconv/quadrature.hpp"
#include "rydconv/rng.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

namespace rydconv {

namespace {

using Cx = std::complex<double>;

void check_spectrum(const Spectrum& s) {
    if (s.axis.size() < 2 || s.axis.size() != s.values.size())
        throw EmptySpectrum("spectrum needs at least two samples");
    double maxv = 0.0;
    for (double v : s.values) {
        if (v < 0.0) throw EmptySpectrum("spectrum values must be >= 0");
        maxv = std::max(maxv, v);
    }
    if (maxv <= 0.0) throw EmptySpectrum("spectrum is identically zero");
}

double spectral_centroid(const Spectrum& s) {
    std::vector<double> ws(s.axis.size());
    for (std::size_t i = 0; i < s.axis.size(); ++i) ws[i] = s.axis[i] * s.values[i];
    return trapezoid(s.axis, ws) / trapezoid(s.axis, s.values);
}

} // namespace

G1Curve g1_from_spectrum(const Spectrum& spectrum, const std::vector<double>& tau) {
    check_spectrum(spectrum);
    const double w0 = spectral_centroid(spectrum);
    const std::size_t n = spectrum.axis.size();

    // trapezoid weights so that g1(0) comes out exactly 1
    std::vector<double> weight(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double h = 0.5 * (spectrum.axis[i] - spectrum.axis[i - 1]);
        weight[i - 1] += h;
        weight[i] += h;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += weight[i] * spectrum.values[i];

    G1Curve g;
    g.tau = tau;
    g.value.resize(tau.size());
    for (std::size_t t = 0; t < tau.size(); ++t) {
        Cx acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double phase = -(spectrum.axis[i] - w0) * tau[t];
            acc += weight[i] * spectrum.values[i] * Cx(std::cos(phase), std::sin(phase));
        }
        g.value[t] = acc / norm;
    }
    return g;
}

CorrelationCurve g2_thermal(const G1Curve& g1) {
    CorrelationCurve c;
    c.tau = g1.tau;
    c.g2.resize(g1.value.size());
    for (std::size_t i = 0; i < g1.value.size(); ++i)
        c.g2[i] = 1.0 + std::norm(g1.value[i]);
    return c;
}

CorrelationCurve g2_mixed(const RateMix& mix, const G1Curve& g1) {
    if (mix.n_thermal < 0.0 || mix.n_coherent < 0.0 || mix.n_noise < 0.0)
        throw AllZeroRates("rates must be >= 0");
    const double total = mix.n_thermal + mix.n_coherent + mix.n_noise;
    if (total <= 0.0) throw AllZeroRates("all rates are zero");
    CorrelationCurve c;
    c.tau = g1.tau;
    c.g2.resize(g1.value.size());
    for (std::size_t i = 0; i < g1.value.size(); ++i) {
        const double phase = -mix.coherent_detuning * g1.tau[i];
        const Cx coherent = mix.n_coherent * Cx(std::cos(phase), std::sin(phase));
        const double num = std::norm(mix.n_thermal * g1.value[i] + coherent)
                         - mix.n_coherent * mix.n_coherent;
        c.g2[i] = 1.0 + num / (total * total);
    }
    return c;
}

CorrelationCurve g2_beat_special(const G1Curve& g1, double detuning) {
    CorrelationCurve c;
    c.tau = g1.tau;
    c.g2.resize(g1.value.size());
    for (std::size_t i = 0; i < g1.value.size(); ++i) {
        const double phase = -detuning * g1.tau[i];
        c.g2[i] = 1.0
            + 0.25 * (std::norm(g1.value[i] + Cx(std::cos(phase), std::sin(phase))) - 1.0);
    }
    return c;
}

ExponentialFit fit_exponential_g2(const CorrelationCurve& curve) {
    std::vector<double> t, y;
    for (std::size_t i = 0; i < curve.tau.size(); ++i)
        if (curve.tau[i] >= 0.0) {
            t.push_back(curve.tau[i]);
            y.push_back(curve.g2[i]);
        }
    if (t.size() < 10)
        throw std::invalid_argument("fit_exponential_g2: need at least 10 bins at tau >= 0");

    // log-linear start
    double a0 = *std::max_element(y.begin(), y.end()) - 1.0;
    if (a0 <= 0.0) throw FitDiverged("curve shows no excess correlation to fit");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double e = y[i] - 1.0;
        if (e > 0.05 * a0) {
            const double ly = std::log(e);
            sx += t[i]; sy += ly; sxx += t[i] * t[i]; sxy += t[i] * ly;
            ++m;
        }
    }
    if (m < 3) throw FitDiverged("too few bins above the fit threshold");
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double tau0 = slope < 0.0 ? -2.0 / slope : t.back();
    double amp = std::exp((sy - slope * sx) / m);

    // Gauss-Newton with Levenberg damping on (amp, tau0)
    double lambda = 1e-3;
    double prev_ss = INFINITY;
    int iter = 0;
    for (; iter < 200; ++iter) {
        double jtj00 = 0, jtj01 = 0, jtj11 = 0, jtr0 = 0, jtr1 = 0, ss = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double e = std::exp(-2.0 * t[i] / tau0);
            const double r = y[i] - (1.0 + amp * e);
            const double j0 = e;
            const double j1 = amp * e * 2.0 * t[i] / (tau0 * tau0);
            jtj00 += j0 * j0; jtj01 += j0 * j1; jtj11 += j1 * j1;
            jtr0 += j0 * r; jtr1 += j1 * r;
            ss += r * r;
        }
        const double d00 = jtj00 * (1.0 + lambda), d11 = jtj11 * (1.0 + lambda);
        const double det = d00 * d11 - jtj01 * jtj01;
        if (!(std::abs(det) > 0.0)) throw FitDiverged("singular normal equations");
        const double da = (d11 * jtr0 - jtj01 * jtr1) / det;
        const double dt0 = (d00 * jtr1 - jtj01 * jtr0) / det;
        amp += da;
        tau0 += dt0;
        if (!(tau0 > 0.0) || !std::isfinite(amp) || !std::isfinite(tau0))
            throw FitDiverged("parameters left the feasible region");
        lambda = ss < prev_ss ? lambda * 0.5 : lambda * 4.0;
        prev_ss = ss;
        if (std::abs(da) < 1e-12 * (1.0 + std::abs(amp))
            && std::abs(dt0) < 1e-12 * tau0) break;
    }
    if (iter >= 200) throw FitDiverged("no convergence in 200 iterations");

    // parameter covariance from the final Jacobian
    double jtj00 = 0, jtj01 = 0, jtj11 = 0, ss = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double e = std::exp(-2.0 * t[i] / tau0);
        const double r = y[i] - (1.0 + amp * e);
        const double j0 = e;
        const double j1 = amp * e * 2.0 * t[i] / (tau0 * tau0);
        jtj00 += j0 * j0; jtj01 += j0 * j1; jtj11 += j1 * j1;
        ss += r * r;
    }
    const double dof = std::max<double>(1.0, static_cast<double>(t.size()) - 2.0);
    const double s2 = ss / dof;
    const double det = jtj00 * jtj11 - jtj01 * jtj01;
    ExponentialFit fit;
    fit.g2_zero = 1.0 + amp;
    fit.tau0 = tau0;
    fit.g2_zero_err = det > 0.0 ? std::sqrt(s2 * jtj11 / det) : 0.0;
    fit.tau0_err = det > 0.0 ? std::sqrt(s2 * jtj00 / det) : 0.0;
    fit.iterations = iter + 1;
    return fit;
}

namespace {

struct FftPlan {
    int n;
    fftw_complex* buf;
    fftw_plan forward;
    fftw_plan backward;

    explicit FftPlan(int size) : n(size) {
        buf = fftw_alloc_complex(n);
        forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftPlan() {
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(buf);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
};

} // namespace

TimeTagSeries simulate_thermal_stream(const Spectrum& spectrum, double mean_rate,
                                      double duration, std::uint64_t seed,
                                      const StreamOptions& opt) {
    check_spectrum(spectrum);
    if (!(mean_rate > 0.0) || !(duration > 0.0) || !(opt.sample_dt > 0.0))
        throw std::invalid_argument("simulate_thermal_stream: bad rate/duration/dt");
    const int n = 1 << opt.chunk_log2;
    const int keep = n - opt.overlap_discard;
    if (keep <= 0) throw std::invalid_argument("simulate_thermal_stream: overlap too large");

    // PSD filter sampled on the chunk's FFT frequencies, centered on the
    // spectral centroid (the carrier only adds a global phase)
    const double w0 = spectral_centroid(spectrum);
    std::vector<double> psd(n, 0.0);
    double psd_mean = 0.0;
    for (int j = 0; j < n; ++j) {
        const double f = (j <= n / 2 ? j : j - n) / (n * opt.sample_dt);
        const double w = 2.0 * constants::pi * f + w0;
        if (w >= spectrum.axis.front() && w <= spectrum.axis.back()) {
            const auto it = std::upper_bound(spectrum.axis.begin(), spectrum.axis.end(), w);
            const std::size_t hi = std::min<std::size_t>(
                spectrum.axis.size() - 1,
                static_cast<std::size_t>(it - spectrum.axis.begin()));
            const std::size_t lo = hi == 0 ? 0 : hi - 1;
            const double span = spectrum.axis[hi] - spectrum.axis[lo];
            const double frac = span > 0.0 ? (w - spectrum.axis[lo]) / span : 0.0;
            psd[j] = (1.0 - frac) * spectrum.values[lo] + frac * spectrum.values[hi];
        }
        psd_mean += psd[j];
    }
    psd_mean /= n;
    if (psd_mean <= 0.0)
        throw EmptySpectrum("spectrum does not overlap the synthesis band");
    std::vector<double> filter(n);
    for (int j = 0; j < n; ++j) filter[j] = std::sqrt(psd[j]);
    // after forward+backward unnormalized FFT, <|a|^2> = n^2 * psd_mean
    const double intensity_norm = 1.0 / (static_cast<double>(n) * n * psd_mean);

    FftPlan fft(n);
    TimeTagSeries out;
    out.duration = duration;
    out.seed = seed;
    double t0 = 0.0;
    for (std::uint64_t chunk = 0; t0 < duration; ++chunk) {
        Rng rng(derive_seed(seed, chunk));
        for (int j = 0; j < n; ++j) {
            fft.buf[j][0] = rng.gaussian() * 0.7071067811865475244;
            fft.buf[j][1] = rng.gaussian() * 0.7071067811865475244;
        }
        fftw_execute(fft.forward);
        for (int j = 0; j < n; ++j) {
            fft.buf[j][0] *= filter[j];
            fft.buf[j][1] *= filter[j];
        }
        fftw_execute(fft.backward);
        for (int j = 0; j < keep; ++j) {
            const double t = t0 + j * opt.sample_dt;
            if (t >= duration) break;
            const double inten = (fft.buf[j][0] * fft.buf[j][0]
                                + fft.buf[j][1] * fft.buf[j][1]) * intensity_norm;
            const unsigned count = rng.poisson(mean_rate * inten * opt.sample_dt);
            for (unsigned k = 0; k < count; ++k)
                out.times.push_back(t + rng.uniform() * opt.sample_dt);
        }
        t0 += keep * opt.sample_dt;
    }
    std::sort(out.times.begin(), out.times.end());
    out.times.erase(std::remove_if(out.times.begin(), out.times.end(),
                                   [&](double t) { return t >= duration; }),
                    out.times.end());
    for (std::size_t i = 1; i < out.times.size(); ++i)
        if (out.times[i] <= out.times[i - 1])
            out.times[i] = std::nextafter(out.times[i - 1], INFINITY);
    return out;
}

TimeTagSeries simulate_poisson_stream(double rate, double duration, std::uint64_t seed) {
    if (!(rate > 0.0) || !(duration > 0.0))
        throw std::invalid_argument("simulate_poisson_stream: rate and duration must be > 0");
    TimeTagSeries out;
    out.duration = duration;
    out.seed = seed;
    Rng rng(derive_seed(seed, 0));
    double t = rng.exponential() / rate;
    while (t < duration) {
        out.times.push_back(t);
        t += rng.exponential() / rate;
    }
    return out;
}

std::pair<TimeTagSeries, TimeTagSeries> split_stream(const TimeTagSeries& s,
                                                     std::uint64_t seed) {
    TimeTagSeries a, b;
    a.duration = b.duration = s.duration;
    a.seed = b.seed = seed;
    Rng rng(derive_seed(seed, 0xBEA3u));
    for (double t : s.times)
        (rng.uniform() < 0.5 ? a : b).times.push_back(t);
    return {a, b};
}

TimeTagSeries merge_streams(const TimeTagSeries& a, const TimeTagSeries& b) {
    TimeTagSeries out;
    out.duration = std::max(a.duration, b.duration);
    out.seed = a.seed;
    out.times.resize(a.times.size() + b.times.size());
    std::merge(a.times.begin(), a.times.end(), b.times.begin(), b.times.end(),
               out.times.begin());
    for (std::size_t i = 1; i < out.times.size(); ++i)
        if (out.times[i] <= out.times[i - 1])
            out.times[i] = std::nextafter(out.times[i - 1], INFINITY);
    return out;
}

namespace {

CorrelationCurve correlate(const std::vector<double>& a, const std::vector<double>& b,
                           double duration, double bin, double max_lag, bool same_series) {
    if (!(bin > 0.0) || !(bin < max_lag))
        throw std::invalid_argument("estimate_g2: need 0 < bin < max_lag");
    if (a.empty() || b.empty())
        throw InsufficientCounts("estimate_g2: empty series");
    const int m = static_cast<int>(std::floor(max_lag / bin + 0.5));
    const double edge = (m + 0.5) * bin;

    CorrelationCurve c;
    c.source = CorrelationCurve::Source::Estimated;
    c.tau.resize(2 * m + 1);
    c.counts.assign(2 * m + 1, 0);
    c.g2.assign(2 * m + 1, 0.0);
    for (int k = -m; k <= m; ++k) c.tau[k + m] = k * bin;

    const double ra = static_cast<double>(a.size()) / duration;
    const double rb = static_cast<double>(b.size()) / duration;
    const double min_expected = ra * rb * (duration - edge) * bin;
    if (min_expected < 10.0)
        throw InsufficientCounts("estimate_g2: fewer than 10 expected pairs per bin");

    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i];
        while (lo < b.size() && b[lo] < t - edge) ++lo;
        while (hi < b.size() && b[hi] < t + edge) ++hi;
        for (std::size_t j = lo; j < hi; ++j) {
            if (same_series && i == j) continue;
            const double d = b[j] - t;
            const int k = static_cast<int>(std::floor(d / bin + 0.5));
            if (k >= -m && k <= m) ++c.counts[k + m];
        }
    }
    for (int k = -m; k <= m; ++k) {
        const double norm = ra * rb * (duration - std::abs(c.tau[k + m])) * bin;
        c.g2[k + m] = static_cast<double>(c.counts[k + m]) / norm;
    }
    return c;
}

} // namespace

CorrelationCurve estimate_g2(const TimeTagSeries& a, const TimeTagSeries& b,
                             double bin, double max_lag) {
    return correlate(a.times, b.times, std::max(a.duration, b.duration), bin, max_lag, false);
}

CorrelationCurve estimate_g2(const TimeTagSeries& s, double bin, double max_lag) {
    return correlate(s.times, s.times, s.duration, bin, max_lag, true);
}

double coherence_limit(double snr) {
    if (snr < 0.0) throw std::invalid_argument("coherence_limit: snr must be >= 0");
    return snr / (1.0 + snr);
}

std::vector<std::uint8_t> serialize_time_tags(const TimeTagSeries& s) {
    std::vector<std::uint8_t> out;
    out.reserve(s.times.size() * 8);
    for (double t : s.times) {
        const std::int64_t ps = static_cast<std::int64_t>(std::llround(t * 1e12));
        for (int b = 0; b < 8; ++b)
            out.push_back(static_cast<std::uint8_t>((static_cast<std::uint64_t>(ps) >> (8 * b)) & 0xFF));
    }
    return out;
}

TimeTagSeries deserialize_time_tags(const std::vector<std::uint8_t>& bytes,
                                    double duration, std::uint64_t seed) {
    if (bytes.size() % 8 != 0)
        throw std::invalid_argument("deserialize_time_tags: byte count not a multiple of 8");
    TimeTagSeries out;
    out.duration = duration;
    out.seed = seed;
    out.times.resize(bytes.size() / 8);
    for (std::size_t i = 0; i < out.times.size(); ++i) {
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            v |= static_cast<std::uint64_t>(bytes[i * 8 + b]) << (8 * b);
        out.times[i] = static_cast<double>(static_cast<std::int64_t>(v)) * 1e-12;
    }
    return out;
}

} // namespace rydconv
