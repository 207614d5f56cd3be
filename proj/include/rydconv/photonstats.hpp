#pragma once

#include "rydconv/response.hpp"

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Photon statistics of the converted light: first- and second-order
// coherence from the conversion band (Wiener-Khinchin), thermal/coherent
// mixtures with beats, exponential fits, and the Monte-Carlo pipeline
// (doubly stochastic thermal streams, Poisson streams, time-tag correlator).

namespace rydconv {

struct EmptySpectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AllZeroRates : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FitDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientCounts : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct G1Curve {
    std::vector<double> tau;                 // s
    std::vector<std::complex<double>> value; // g1(tau), g1(0) = 1
};

struct CorrelationCurve {
    enum class Source { Analytic, Estimated };
    std::vector<double> tau;          // bin centers, s
    std::vector<double> g2;
    std::vector<std::uint64_t> counts; // raw pair counts (estimates only)
    Source source = Source::Analytic;
};

struct RateMix {
    double n_thermal = 0.0;  // 1/s
    double n_coherent = 0.0; // 1/s
    double n_noise = 0.0;    // 1/s
    double coherent_detuning = 0.0; // rad/s offset from the band center
};

struct TimeTagSeries {
    std::vector<double> times; // s, strictly increasing in [0, duration)
    double duration = 0.0;     // s
    std::uint64_t seed = 0;
};

// g1(tau) of the thermal field via the Wiener-Khinchin theorem. The power
// spectrum is renormalized so Int |S|^2 dw = 2 pi; evaluation is a direct
// discrete Fourier sum on the sampled axis and g1(0) = 1 exactly. The
// spectrum's own axis offset only contributes a global phase e^{-i w0 tau},
// which is removed by centering on the spectral centroid.
G1Curve g1_from_spectrum(const Spectrum& spectrum, const std::vector<double>& tau);

// thermal light: g2 = 1 + |g1|^2
CorrelationCurve g2_thermal(const G1Curve& g1);

// general thermal + coherent + flat-noise mixture:
// g2 = 1 + (|n_th g1 + n_coh e^{-i dw tau}|^2 - n_coh^2) / (n_th+n_coh+n_noise)^2
CorrelationCurve g2_mixed(const RateMix& mix, const G1Curve& g1);

// equal-rate beat special case: g2 = 1 + (|g1 + e^{-i dw tau}|^2 - 1)/4;
// identical to g2_mixed at n_coh = n_th, n_noise = 0
CorrelationCurve g2_beat_special(const G1Curve& g1, double detuning);

struct ExponentialFit {
    double g2_zero;
    double tau0;          // s, in g2 = 1 + (g2(0)-1) exp(-2 tau / tau0)
    double g2_zero_err;
    double tau0_err;
    int iterations;
};

// least-squares fit of 1 + A exp(-2 tau/tau0) on the tau >= 0 bins
ExponentialFit fit_exponential_g2(const CorrelationCurve& curve);

struct StreamOptions {
    double sample_dt = 2e-9;      // field sampling step, s
    int chunk_log2 = 20;          // FFT chunk size
    int overlap_discard = 4096;   // samples dropped at each chunk tail
};

// Doubly stochastic thermal stream: complex Gaussian field with the given
// power spectrum (FFT-filtered white noise, circulant approximation),
// intensity scaled to mean_rate, arrivals drawn per sample bin. Chunked with
// per-chunk substreams derived from the seed, so output is reproducible and
// independent of chunking internals only through the documented options.
TimeTagSeries simulate_thermal_stream(const Spectrum& spectrum, double mean_rate,
                                      double duration, std::uint64_t seed,
                                      const StreamOptions& opt = {});

TimeTagSeries simulate_poisson_stream(double rate, double duration, std::uint64_t seed);

// 50:50 splitter: routes each tag to one of two detectors
std::pair<TimeTagSeries, TimeTagSeries> split_stream(const TimeTagSeries& s,
                                                     std::uint64_t seed);

// sorted union of two series
TimeTagSeries merge_streams(const TimeTagSeries& a, const TimeTagSeries& b);

// normalized coincidence histogram between two detectors:
// g2(tau) = <n_A(t) n_B(t+tau)> / (<n_A><n_B>), bins of width bin over
// [-max_lag, max_lag]; per-bin raw counts are kept for sqrt(N) error bars
CorrelationCurve estimate_g2(const TimeTagSeries& a, const TimeTagSeries& b,
                             double bin, double max_lag);

// single-detector autocorrelation (ideal dead-time-free detector)
CorrelationCurve estimate_g2(const TimeTagSeries& s, double bin, double max_lag);

// conversion-coherence ceiling set by the signal-to-noise ratio
double coherence_limit(double snr);

// time tags as little-endian int64 picoseconds
std::vector<std::uint8_t> serialize_time_tags(const TimeTagSeries& s);
TimeTagSeries deserialize_time_tags(const std::vector<std::uint8_t>& bytes,
                                    double duration, std::uint64_t seed);

} // namespace rydconv
