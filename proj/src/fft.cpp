#include "heis/fft.hpp"

#include <cmath>
#include <cstdint>

namespace heis::fft {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

void fft_pow2(std::vector<cdouble>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cdouble wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cdouble u = a[i + j];
                const cdouble v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void dft(std::vector<cdouble>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    if (is_pow2(n)) {
        fft_pow2(a, inverse);
        return;
    }

    // Bluestein: nk = (n^2 + k^2 - (k-n)^2)/2 turns the DFT into a
    // convolution with the chirp e^{i pi m^2 / N}.  Squares are reduced
    // mod 2N before the sine/cosine to keep the phase accurate for large m.
    const std::int64_t nn = static_cast<std::int64_t>(n);
    const double sgn = inverse ? 1.0 : -1.0;
    auto chirp = [&](std::int64_t m) {
        const std::int64_t m2 = (m % (2 * nn)) * (m % (2 * nn)) % (2 * nn);
        const double ang = sgn * kPi * static_cast<double>(m2) / static_cast<double>(nn);
        return cdouble(std::cos(ang), std::sin(ang));
    };

    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cdouble> fa(m, cdouble(0.0, 0.0));
    std::vector<cdouble> fb(m, cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) fa[i] = a[i] * chirp(static_cast<std::int64_t>(i));
    for (std::size_t i = 0; i < n; ++i) {
        const cdouble c = std::conj(chirp(static_cast<std::int64_t>(i)));
        fb[i] = c;
        if (i != 0) fb[m - i] = c;
    }
    fft_pow2(fa, false);
    fft_pow2(fb, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft_pow2(fa, true);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = fa[k] * scale * chirp(static_cast<std::int64_t>(k));
}

}  // namespace heis::fft
