// io.cpp
#include "charfun/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "charfun/errors.hpp"

namespace charfun {

namespace {

constexpr char kMagic[4] = {'C', 'F', 'L', '1'};

void write_header(std::ofstream& out, const GridSpec& spec) {
    char header[16];
    std::memcpy(header, kMagic, 4);
    const std::uint16_t dim = static_cast<std::uint16_t>(spec.dim);
    const std::uint16_t n = static_cast<std::uint16_t>(spec.n);
    std::memcpy(header + 4, &dim, 2);
    std::memcpy(header + 6, &n, 2);
    std::memcpy(header + 8, &spec.box_length, 8);
    out.write(header, 16);
}

GridSpec read_header(std::ifstream& in, const std::filesystem::path& path) {
    char header[16];
    in.read(header, 16);
    if (!in || std::memcmp(header, kMagic, 4) != 0)
        throw ConfigError("not a CFL1 file: " + path.string());
    std::uint16_t dim = 0, n = 0;
    double L = 0.0;
    std::memcpy(&dim, header + 4, 2);
    std::memcpy(&n, header + 6, 2);
    std::memcpy(&L, header + 8, 8);
    return make_grid(dim, n, L);
}

template <class T>
void write_payload(const std::filesystem::path& path, const GridSpec& spec, const std::vector<T>& values) {
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open for writing: " + tmp.string());
        write_header(out, spec);
        out.write(reinterpret_cast<const char*>(values.data()),
                  static_cast<std::streamsize>(values.size() * sizeof(T)));
        if (!out) throw ConfigError("short write: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

void write_field(const std::filesystem::path& path, const ScalarField& f) {
    write_payload(path, f.spec, f.values);
}

void write_spectrum(const std::filesystem::path& path, const Spectrum& s) {
    write_payload(path, s.spec, s.values);
}

ScalarField read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open: " + path.string());
    const GridSpec spec = read_header(in, path);
    ScalarField f = make_field(spec);
    in.read(reinterpret_cast<char*>(f.values.data()), static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!in) throw ConfigError("truncated field payload: " + path.string());
    return f;
}

Spectrum read_spectrum(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open: " + path.string());
    const GridSpec spec = read_header(in, path);
    Spectrum s = make_spectrum(spec);
    in.read(reinterpret_cast<char*>(s.values.data()),
            static_cast<std::streamsize>(s.values.size() * sizeof(std::complex<double>)));
    if (!in) throw ConfigError("truncated spectrum payload: " + path.string());
    return s;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw ConfigError("short write: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string distribution_csv(const DistributionFunction& d) {
    std::string out = "lambda,measure\n";
    const auto& mags = d.magnitudes;
    // One row per distinct magnitude: measure of {|f| >= lambda}, where the
    // weak-norm sup is attained.
    for (std::size_t i = 0; i < mags.size();) {
        std::size_t jump = i;
        while (jump + 1 < mags.size() && mags[jump + 1] == mags[i]) ++jump;
        const double lambda = mags[i];
        const double meas = d.cell_measure * static_cast<double>(mags.size() - i);
        out += format_double(lambda) + "," + format_double(meas) + "\n";
        i = jump + 1;
    }
    return out;
}

} // namespace charfun
