#include "intfield/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace intfield {

namespace {

struct Spectrum {
    std::vector<double> mag;
    double bin = 0;  // angular frequency per bin
};

Spectrum windowed_spectrum(const std::vector<double>& series, double dt, int zero_pad) {
    const std::size_t n = series.size();
    if (n < 16) throw std::invalid_argument("frequency measurement needs at least 16 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("sample spacing must be positive");
    double mean = 0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);

    const std::size_t len = n * static_cast<std::size_t>(std::max(1, zero_pad));
    std::vector<double> in(len, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
        in[i] = w * (series[i] - mean);
    }
    const std::size_t nout = len / 2 + 1;
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nout));
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(len), in.data(), out, FFTW_ESTIMATE);
    fftw_execute(plan);
    Spectrum s;
    s.mag.resize(nout);
    for (std::size_t k = 0; k < nout; ++k) s.mag[k] = std::hypot(out[k][0], out[k][1]);
    fftw_destroy_plan(plan);
    fftw_free(out);
    s.bin = 2 * std::numbers::pi / (static_cast<double>(len) * dt);
    return s;
}

double median(std::vector<double> v) {
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

}  // namespace

std::vector<SpectralPeak> spectral_peaks(const std::vector<double>& series, double dt, const FrequencyOptions& opt) {
    const Spectrum s = windowed_spectrum(series, dt, opt.zero_pad);
    const double floor = median(s.mag);
    const double top = *std::max_element(s.mag.begin(), s.mag.end());
    const double threshold = std::max(opt.noise_factor * floor, opt.relative_floor * top);
    std::vector<SpectralPeak> peaks;
    // a peak must dominate a few natural bins on each side, which discards window sidelobes
    const std::size_t guard = 4 * static_cast<std::size_t>(std::max(1, opt.zero_pad));
    for (std::size_t k = 1; k + 1 < s.mag.size(); ++k) {
        const double a = s.mag[k - 1], b = s.mag[k], c = s.mag[k + 1];
        if (!(b > a && b >= c && b > threshold)) continue;
        const std::size_t lo = k > guard ? k - guard : 0, hi = std::min(s.mag.size() - 1, k + guard);
        if (*std::max_element(s.mag.begin() + static_cast<std::ptrdiff_t>(lo), s.mag.begin() + static_cast<std::ptrdiff_t>(hi) + 1) > b)
            continue;
        double offset = 0;
        if (a > 0 && c > 0) {
            const double la = std::log(a), lb = std::log(b), lc = std::log(c);
            const double den = la - 2 * lb + lc;
            if (den < 0) offset = 0.5 * (la - lc) / den;
        }
        peaks.push_back({(static_cast<double>(k) + offset) * s.bin, b});
    }
    std::sort(peaks.begin(), peaks.end(), [](const auto& x, const auto& y) { return x.magnitude > y.magnitude; });
    return peaks;
}

double measure_frequency(const std::vector<double>& series, double dt, const FrequencyOptions& opt) {
    const auto peaks = spectral_peaks(series, dt, opt);
    if (peaks.empty()) throw std::invalid_argument("no spectral peak above the noise floor");
    const double omega = peaks.front().omega;
    const double duration = dt * static_cast<double>(series.size() - 1);
    if (omega * duration < 8 * 2 * std::numbers::pi)
        throw std::invalid_argument("series spans fewer than 8 periods of its dominant frequency");
    if (opt.require_single_tone) {
        // sidelobes of the main peak sit within a few bins; anything further is a second tone
        const double guard = 4 * 2 * std::numbers::pi / duration;
        for (std::size_t i = 1; i < peaks.size(); ++i)
            if (std::abs(peaks[i].omega - omega) > guard && peaks[i].magnitude > opt.tone_ratio * peaks.front().magnitude)
                throw std::invalid_argument("series contains more than one tone");
    }
    return omega;
}

}  // namespace intfield
