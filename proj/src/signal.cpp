#include "tenetdag/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "tenetdag/error.hpp"

namespace tenetdag::dsp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_power_of_two(std::size_t n, const char* what) {
    if (!is_power_of_two(n))
        throw NonPowerOfTwoLength(std::string(what) + " length " + std::to_string(n) + " is not a power of two");
}

std::vector<Complex> fft_recursive_impl(const std::vector<Complex>& data, double sign) {
    const std::size_t n = data.size();
    if (n == 1) return data;
    std::vector<Complex> even(n / 2), odd(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        even[k] = data[2 * k];
        odd[k] = data[2 * k + 1];
    }
    even = fft_recursive_impl(even, sign);
    odd = fft_recursive_impl(odd, sign);

    std::vector<Complex> out(n);
    const Complex step = std::polar(1.0, sign * kTwoPi / static_cast<double>(n));
    Complex w{1.0, 0.0};
    for (std::size_t k = 0; k < n / 2; ++k) {
        Complex t = w * odd[k];
        out[k] = even[k] + t;
        out[k + n / 2] = even[k] - t;
        w *= step;
    }
    return out;
}

} // namespace

std::string_view method_name(FilterMethod method) {
    switch (method) {
    case FilterMethod::PointwiseDirect: return "pointwise";
    case FilterMethod::FftIterative: return "fft-iter";
    case FilterMethod::FftRecursive: return "fft-rec";
    }
    return "?";
}

std::string_view method_title(FilterMethod method) {
    switch (method) {
    case FilterMethod::PointwiseDirect: return "Pointwise-direct";
    case FilterMethod::FftIterative: return "FFT-iterative";
    case FilterMethod::FftRecursive: return "FFT-recursive";
    }
    return "?";
}

std::optional<FilterMethod> parse_method(std::string_view text) {
    for (FilterMethod m : kAllMethods)
        if (text == method_name(m) || text == method_title(m)) return m;
    return std::nullopt;
}

bool uses_fft(FilterMethod method) { return method != FilterMethod::PointwiseDirect; }

PrecisionRule PrecisionRule::for_length(std::size_t length) {
    std::size_t padded = next_power_of_two(std::max<std::size_t>(length, 1));
    int digits = 0;
    for (std::size_t p = 1; p < padded; p *= 10) ++digits;
    return {std::max(digits, 1)};
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<double> gen_sine(const SignalConfig& config) {
    if (config.length < 1) throw InvalidArgument("signal length must be positive");
    if (!(config.sample_rate > 0.0)) throw InvalidArgument("sample rate must be positive");
    std::vector<double> out(config.length, 0.0);
    for (std::size_t n = 0; n < config.length; ++n)
        for (double f : config.frequencies) out[n] += std::sin(kTwoPi * f * static_cast<double>(n) / config.sample_rate);
    return out;
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<double> add_noise(std::span<const double> signal, std::uint64_t seed, double stddev) {
    if (!(stddev >= 0.0)) throw InvalidArgument("noise stddev must be non-negative");
    std::vector<double> out(signal.begin(), signal.end());
    if (stddev == 0.0) return out;
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < out.size(); i += 2) {
        double u1 = 1.0 - rng.next_unit(); // (0, 1]
        double u2 = rng.next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        out[i] += stddev * r * std::cos(kTwoPi * u2);
        if (i + 1 < out.size()) out[i + 1] += stddev * r * std::sin(kTwoPi * u2);
    }
    return out;
}

std::vector<double> hann_window(std::size_t size) {
    if (size < 2) throw InvalidArgument("Hann window needs at least two points");
    std::vector<double> w(size);
    const double denom = static_cast<double>(size - 1);
    for (std::size_t n = 0; n < size; ++n) w[n] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(n) / denom);
    w.front() = 0.0;
    w.back() = 0.0;
    return w;
}

std::vector<double> normalize(std::span<const double> window) {
    double sum = std::accumulate(window.begin(), window.end(), 0.0);
    if (sum == 0.0) throw ZeroVector("cannot normalize a window with zero sum");
    std::vector<double> out(window.begin(), window.end());
    for (double& v : out) v /= sum;
    return out;
}

std::vector<double> filter_pointwise(std::span<const double> signal, std::span<const double> window) {
    const auto len = static_cast<std::ptrdiff_t>(signal.size());
    const auto m = static_cast<std::ptrdiff_t>(window.size());
    if (m < 1 || m > len) throw InvalidArgument("window length must be between 1 and the signal length");
    const std::ptrdiff_t offset = (m - 1) / 2;
    std::vector<double> out(signal.size(), 0.0);
    for (std::ptrdiff_t n = 0; n < len; ++n) {
        double acc = 0.0;
        for (std::ptrdiff_t k = 0; k < m; ++k) {
            std::ptrdiff_t idx = n - k + offset;
            if (idx >= 0 && idx < len) acc += signal[idx] * window[k];
        }
        out[n] = acc;
    }
    return out;
}

std::vector<Complex> fft_iterative(std::vector<Complex> a, bool inverse) {
    const std::size_t n = a.size();
    require_power_of_two(n, "FFT");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    std::vector<Complex> twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        twiddle[k] = std::polar(1.0, sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len)
            for (std::size_t j = 0; j < half; ++j) {
                Complex u = a[i + j];
                Complex v = a[i + j + half] * twiddle[j * stride];
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
    return a;
}

std::vector<Complex> fft_recursive(std::vector<Complex> data, bool inverse) {
    require_power_of_two(data.size(), "FFT");
    auto out = fft_recursive_impl(data, inverse ? 1.0 : -1.0);
    if (inverse)
        for (auto& x : out) x /= static_cast<double>(out.size());
    return out;
}

std::vector<double> filter_fft(std::span<const double> signal, std::span<const double> window, FilterMethod method) {
    require_power_of_two(signal.size(), "signal");
    if (window.empty() || window.size() > signal.size())
        throw InvalidArgument("window length must be between 1 and the signal length");
    auto transform = method == FilterMethod::FftRecursive ? fft_recursive : fft_iterative;

    const std::size_t padded = next_power_of_two(signal.size() + window.size() - 1);
    std::vector<Complex> xs(padded), ws(padded);
    std::copy(signal.begin(), signal.end(), xs.begin());
    std::copy(window.begin(), window.end(), ws.begin());
    xs = transform(std::move(xs), false);
    ws = transform(std::move(ws), false);
    for (std::size_t k = 0; k < padded; ++k) xs[k] *= ws[k];
    xs = transform(std::move(xs), true);

    const std::size_t offset = (window.size() - 1) / 2;
    std::vector<double> out(signal.size());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = xs[n + offset].real();
    return out;
}

std::vector<double> apply_filter(std::span<const double> signal, std::span<const double> window, FilterMethod method) {
    return uses_fft(method) ? filter_fft(signal, window, method) : filter_pointwise(signal, window);
}

double ncc_raw(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) throw InvalidArgument("NCC needs two non-empty signals of equal length");
    double xy = 0.0, xx = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xy += x[i] * y[i];
        xx += x[i] * x[i];
        yy += y[i] * y[i];
    }
    if (xx == 0.0 || yy == 0.0) throw ZeroVector("NCC of an all-zero signal is undefined");
    return std::clamp(xy / (std::sqrt(xx) * std::sqrt(yy)), -1.0, 1.0);
}

double round_half_even(double value, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::nearbyint(value * scale) / scale;
}

double ncc(std::span<const double> x, std::span<const double> y, PrecisionRule rule) {
    return round_half_even(ncc_raw(x, y), rule.digits);
}

} // namespace tenetdag::dsp
