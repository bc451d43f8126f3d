#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tenetdag::dsp {

using Complex = std::complex<double>;

struct SignalConfig {
    std::size_t length = 512;
    std::vector<double> frequencies{2.0, 100.0};
    double sample_rate = 512.0;
    double noise_stddev = 0.1;
    std::uint64_t seed = 0;
    std::size_t window_size = 33;
};

enum class FilterMethod { PointwiseDirect, FftIterative, FftRecursive };

inline constexpr FilterMethod kAllMethods[] = {FilterMethod::PointwiseDirect, FilterMethod::FftIterative,
                                               FilterMethod::FftRecursive};

/// CLI spelling: pointwise, fft-iter, fft-rec.
std::string_view method_name(FilterMethod method);
/// Trial-name prefix: Pointwise-direct, FFT-iterative, FFT-recursive.
std::string_view method_title(FilterMethod method);
std::optional<FilterMethod> parse_method(std::string_view text);
bool uses_fft(FilterMethod method);

/// Decimal digits an NCC value is compared at, from the signal length:
/// the digit count of 2^ceil(log2 L), never less than one.
struct PrecisionRule {
    int digits = 3;
    static PrecisionRule for_length(std::size_t length);
};

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

/// s[n] = sum over f of sin(2*pi*f*n / rate).
std::vector<double> gen_sine(const SignalConfig& config);

/// splitmix64 generator; the noise stream's only source of randomness.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double next_unit();

private:
    std::uint64_t state_;
};

/// Adds N(0, stddev^2) noise via Box-Muller over a splitmix64 stream.
/// stddev == 0 returns the input unchanged.
std::vector<double> add_noise(std::span<const double> signal, std::uint64_t seed, double stddev);

/// w[n] = 0.5 - 0.5*cos(2*pi*n/(M-1)), endpoints exactly zero.
std::vector<double> hann_window(std::size_t size);
/// Scales to unit sum (unit DC gain).
std::vector<double> normalize(std::span<const double> window);

/// Direct "same" convolution, centre-aligned with offset (M-1)/2 and zero
/// padding outside the signal.
std::vector<double> filter_pointwise(std::span<const double> signal, std::span<const double> window);

/// Radix-2 Cooley-Tukey with bit-reversal and a precomputed twiddle table.
std::vector<Complex> fft_iterative(std::vector<Complex> data, bool inverse = false);
/// Recursive decimation in time; twiddles generated per call by repeated
/// multiplication, so results differ from fft_iterative in the last bits.
std::vector<Complex> fft_recursive(std::vector<Complex> data, bool inverse = false);

/// Same alignment as filter_pointwise, computed by spectral multiplication
/// with the given FFT method. The signal length must be a power of two.
std::vector<double> filter_fft(std::span<const double> signal, std::span<const double> window, FilterMethod method);

std::vector<double> apply_filter(std::span<const double> signal, std::span<const double> window, FilterMethod method);

/// Energy-normalized cross-correlation, before rounding.
double ncc_raw(std::span<const double> x, std::span<const double> y);
double round_half_even(double value, int digits);
double ncc(std::span<const double> x, std::span<const double> y, PrecisionRule rule);

} // namespace tenetdag::dsp
