#pragma once

#include <vector>

namespace intfield {

struct SpectralPeak {
    double omega = 0;      ///< angular frequency
    double magnitude = 0;  ///< windowed amplitude, arbitrary units
};

struct FrequencyOptions {
    int zero_pad = 4;                ///< transform length multiplier
    double noise_factor = 10;        ///< a peak must exceed the median magnitude by this factor
    double relative_floor = 1e-3;    ///< and this fraction of the largest magnitude
    bool require_single_tone = false;
    double tone_ratio = 0.1;         ///< rejection threshold for a secondary peak
};

/// Significant local maxima of the Hann-windowed, mean-removed spectrum of a series
/// sampled with spacing dt, each refined by quadratic interpolation of log magnitude.
/// Sorted by decreasing magnitude.
std::vector<SpectralPeak> spectral_peaks(const std::vector<double>& series, double dt, const FrequencyOptions& opt = {});

/// Dominant angular frequency. Throws std::invalid_argument when no peak clears the
/// noise floor, when the record spans fewer than 8 periods, or (if requested) when a
/// second tone is present.
double measure_frequency(const std::vector<double>& series, double dt, const FrequencyOptions& opt = {});

}  // namespace intfield
