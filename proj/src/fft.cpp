// fft.cpp -- iterative radix-2 transforms, batched per grid line.
#include "charfun/fft.hpp"

#include <cmath>
#include <numbers>

namespace charfun {

namespace {

using cplx = std::complex<double>;

void bit_reverse_table(int n, std::vector<int>& rev) {
    rev.assign(static_cast<std::size_t>(n), 0);
    int log2n = 0;
    while ((1 << log2n) < n) ++log2n;
    for (int i = 0; i < n; ++i) {
        int r = 0;
        for (int b = 0; b < log2n; ++b)
            if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
        rev[static_cast<std::size_t>(i)] = r;
    }
}

// tw[j] = exp(-2*pi*i*j/n), j < n/2; sign=+1 conjugates at use.
void twiddle_table(int n, std::vector<cplx>& tw) {
    tw.assign(static_cast<std::size_t>(n / 2), cplx{});
    for (int j = 0; j < n / 2; ++j) {
        const double ang = -2.0 * std::numbers::pi * j / n;
        tw[static_cast<std::size_t>(j)] = cplx{std::cos(ang), std::sin(ang)};
    }
}

void fft_line(cplx* a, int n, int sign, const std::vector<int>& rev, const std::vector<cplx>& tw) {
    for (int i = 0; i < n; ++i) {
        const int r = rev[static_cast<std::size_t>(i)];
        if (r > i) std::swap(a[i], a[r]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len >> 1;
        const int step = n / len;
        for (int base = 0; base < n; base += len) {
            for (int j = 0; j < half; ++j) {
                cplx w = tw[static_cast<std::size_t>(j * step)];
                if (sign > 0) w = std::conj(w);
                const cplx u = a[base + j];
                const cplx v = a[base + j + half] * w;
                a[base + j] = u + v;
                a[base + j + half] = u - v;
            }
        }
    }
}

} // namespace

void dft_all_axes(std::vector<cplx>& data, const GridSpec& spec, int sign, Exec exec) {
    validate_grid(spec);
    const int n = spec.n;
    const std::int64_t count = spec.cell_count();
    const std::int64_t lines = count / n;

    std::vector<int> rev;
    std::vector<cplx> tw;
    bit_reverse_table(n, rev);
    twiddle_table(n, tw);

    std::int64_t strides[3] = {0, 0, 0};
    {
        std::int64_t s = 1;
        for (int a = spec.dim - 1; a >= 0; --a) {
            strides[a] = s;
            s *= n;
        }
    }

    for (int axis = 0; axis < spec.dim; ++axis) {
        const std::int64_t stride = strides[axis];
        if (stride == 1) {
            for_each_index(lines, exec, [&](std::int64_t l) { fft_line(data.data() + l * n, n, sign, rev, tw); });
        } else {
            for_each_index(lines, exec, [&](std::int64_t l) {
                // Flat offset of the line's first element: l indexes the
                // remaining axes in row-major order, skipping `axis`.
                std::int64_t base = 0, rem = l;
                for (int a = spec.dim - 1; a >= 0; --a) {
                    if (a == axis) continue;
                    base += (rem % n) * strides[a];
                    rem /= n;
                }
                thread_local std::vector<cplx> scratch;
                scratch.resize(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) scratch[static_cast<std::size_t>(i)] = data[static_cast<std::size_t>(base + i * stride)];
                fft_line(scratch.data(), n, sign, rev, tw);
                for (int i = 0; i < n; ++i) data[static_cast<std::size_t>(base + i * stride)] = scratch[static_cast<std::size_t>(i)];
            });
        }
    }
}

namespace {

// Uncentered DFT index k <-> centered index c = (k + n/2) mod n, per axis.
std::int64_t recenter_flat(const GridSpec& spec, std::int64_t flat, int direction) {
    const int n = spec.n;
    std::int64_t out = 0, mul = 1;
    for (int a = spec.dim - 1; a >= 0; --a) {
        const int k = static_cast<int>(flat % n);
        flat /= n;
        const int c = direction > 0 ? (k + n / 2) % n : (k + n - n / 2) % n;
        out += c * mul;
        mul *= n;
    }
    return out;
}

} // namespace

Spectrum forward_transform(const ScalarField& f, Exec exec) {
    validate_grid(f.spec);
    const std::int64_t count = f.spec.cell_count();
    std::vector<cplx> buf(static_cast<std::size_t>(count));
    for_each_index(count, exec, [&](std::int64_t i) { buf[static_cast<std::size_t>(i)] = cplx{f.values[static_cast<std::size_t>(i)], 0.0}; });

    dft_all_axes(buf, f.spec, -1, exec);

    Spectrum s = make_spectrum(f.spec);
    const double scale = f.spec.cell_measure();
    for_each_index(count, exec, [&](std::int64_t i) {
        s.values[static_cast<std::size_t>(recenter_flat(f.spec, i, +1))] = buf[static_cast<std::size_t>(i)] * scale;
    });
    return s;
}

ScalarField inverse_transform(const Spectrum& s, Exec exec) {
    validate_grid(s.spec);
    const std::int64_t count = s.spec.cell_count();
    std::vector<cplx> buf(static_cast<std::size_t>(count));
    for_each_index(count, exec, [&](std::int64_t i) {
        buf[static_cast<std::size_t>(recenter_flat(s.spec, i, -1))] = s.values[static_cast<std::size_t>(i)];
    });

    dft_all_axes(buf, s.spec, +1, exec);

    ScalarField f = make_field(s.spec);
    double scale = 1.0;
    for (int a = 0; a < s.spec.dim; ++a) scale /= s.spec.box_length; // 1/(h n)^dim
    for_each_index(count, exec, [&](std::int64_t i) { f.values[static_cast<std::size_t>(i)] = buf[static_cast<std::size_t>(i)].real() * scale; });
    return f;
}

} // namespace charfun
