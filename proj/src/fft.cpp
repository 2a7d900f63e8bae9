#include "bourgainlab/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "bourgainlab/common.hpp"

namespace bourgainlab {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;

std::int64_t next_pow2(std::int64_t n) {
    std::int64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}
}  // namespace

void pow2_fft(std::complex<double>* a, std::int64_t n, bool backward) {
    // Bit-reversal permutation.
    for (std::int64_t i = 1, j = 0; i < n; ++i) {
        std::int64_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = backward ? 1.0 : -1.0;
    for (std::int64_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTau / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::int64_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::int64_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

CyclicPlan::CyclicPlan(std::int64_t n) : n_(n) {
    require(n >= 1, "transform length must be positive");
    if ((n & (n - 1)) == 0) return;  // pure radix-2 path
    padded_ = next_pow2(2 * n - 1);
    chirp_f_.resize(n);
    chirp_b_.resize(n);
    for (std::int64_t k = 0; k < n; ++k) {
        // k^2/2 mod n as a phase over e(-1/n): use k^2 mod 2n to stay exact.
        std::int64_t e = (k * k) % (2 * n);
        double ang = -std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
        chirp_f_[k] = {std::cos(ang), std::sin(ang)};
        chirp_b_[k] = std::conj(chirp_f_[k]);
    }
    auto build_kernel = [&](const std::vector<std::complex<double>>& chirp) {
        std::vector<std::complex<double>> ker(padded_, std::complex<double>(0.0, 0.0));
        for (std::int64_t k = 0; k < n; ++k) {
            ker[k] = std::conj(chirp[k]);
            if (k) ker[padded_ - k] = std::conj(chirp[k]);
        }
        pow2_fft(ker.data(), padded_, false);
        return ker;
    };
    kernel_f_ = build_kernel(chirp_f_);
    kernel_b_ = build_kernel(chirp_b_);
}

void CyclicPlan::run(std::complex<double>* data, bool backward) const {
    if (padded_ == 0) {
        pow2_fft(data, n_, backward);
        return;
    }
    const auto& chirp = backward ? chirp_b_ : chirp_f_;
    const auto& kernel = backward ? kernel_b_ : kernel_f_;
    std::vector<std::complex<double>> buf(padded_, std::complex<double>(0.0, 0.0));
    for (std::int64_t k = 0; k < n_; ++k) buf[k] = data[k] * chirp[k];
    pow2_fft(buf.data(), padded_, false);
    for (std::int64_t k = 0; k < padded_; ++k) buf[k] *= kernel[k];
    pow2_fft(buf.data(), padded_, true);
    const double inv = 1.0 / static_cast<double>(padded_);
    for (std::int64_t k = 0; k < n_; ++k) data[k] = buf[k] * inv * chirp[k];
}

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x,
                                            bool backward) {
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    const double sign = backward ? 1.0 : -1.0;
    std::vector<std::complex<double>> y(n, std::complex<double>(0.0, 0.0));
    for (std::int64_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::int64_t j = 0; j < n; ++j) {
            double ang = sign * kTau * static_cast<double>((j * k) % n) / static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        y[k] = acc;
    }
    return y;
}

}  // namespace bourgainlab
