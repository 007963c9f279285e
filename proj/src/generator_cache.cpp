#include "cavharvest/generator_cache.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "cavharvest/errors.hpp"

namespace cavharvest {

namespace {

constexpr std::array<char, 8> kMagic = {'C', 'A', 'V', 'H', 'G', 'E', 'N', '\0'};

template <typename T>
T to_little_endian(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<T>(bytes);
    } else {
        return value;
    }
}

class Writer {
public:
    template <typename T>
    void put(T value) {
        const T le = to_little_endian(value);
        const auto* p = reinterpret_cast<const char*>(&le);
        buffer_.insert(buffer_.end(), p, p + sizeof(T));
    }
    void put_bytes(const char* p, std::size_t n) { buffer_.insert(buffer_.end(), p, p + n); }
    void put_complex(const std::complex<double>& z) {
        put(z.real());
        put(z.imag());
    }
    const std::vector<char>& bytes() const { return buffer_; }

private:
    std::vector<char> buffer_;
};

class Reader {
public:
    explicit Reader(std::vector<char> data) : data_(std::move(data)) {}

    template <typename T>
    bool get(T& out) {
        if (pos_ + sizeof(T) > data_.size()) {
            return false;
        }
        T raw;
        std::memcpy(&raw, data_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        out = to_little_endian(raw);
        return true;
    }
    bool get_complex(std::complex<double>& z) {
        double re = 0.0;
        double im = 0.0;
        if (!get(re) || !get(im)) {
            return false;
        }
        z = {re, im};
        return true;
    }
    bool at_end() const { return pos_ == data_.size(); }

private:
    std::vector<char> data_;
    std::size_t pos_ = 0;
};

void write_header(Writer& w, const CavityConfig& cfg) {
    w.put_bytes(kMagic.data(), kMagic.size());
    w.put(kCacheFormatVersion);
    w.put(std::uint32_t{0});
    w.put(static_cast<std::uint64_t>(cfg.dimension()));
    w.put(cfg.length);
    w.put(static_cast<std::int64_t>(cfg.n_modes));
    w.put(cfg.detector_frequency);
    w.put(cfg.coupling);
    w.put(cfg.x1);
    w.put(cfg.x2);
}

}  // namespace

std::uint64_t config_hash(const CavityConfig& cfg) {
    Writer w;
    write_header(w, cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : w.bytes()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::filesystem::path cache_file_path(const std::filesystem::path& dir, const CavityConfig& cfg) {
    char name[32];
    std::snprintf(name, sizeof name, "gen-%016llx.bin", static_cast<unsigned long long>(config_hash(cfg)));
    return dir / name;
}

void save_generator(const std::filesystem::path& dir, const PropagatorGenerator& gen) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create cache directory " + dir.string() + ": " + ec.message());
    }

    Writer w;
    write_header(w, gen.config());
    const auto& sp = gen.spectrum();
    for (Eigen::Index i = 0; i < sp.eigenvalues.size(); ++i) {
        w.put_complex(sp.eigenvalues[i]);
    }
    for (const Eigen::MatrixXcd* m : {&sp.eigenvectors, &sp.inverse_eigenvectors}) {
        for (Eigen::Index i = 0; i < m->size(); ++i) {
            w.put_complex(m->data()[i]);
        }
    }

    const auto path = cache_file_path(dir, gen.config());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write cache file " + tmp.string());
        }
        out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
        if (!out) {
            throw IoError("short write to cache file " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot move cache file into place at " + path.string() + ": " + ec.message());
    }
}

std::optional<PropagatorGenerator> load_generator(const std::filesystem::path& dir, const CavityConfig& cfg) {
    const auto path = cache_file_path(dir, cfg);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Writer expected;
    write_header(expected, cfg);
    const auto& header = expected.bytes();
    if (data.size() < header.size() || !std::equal(header.begin(), header.end(), data.begin())) {
        return std::nullopt;
    }

    Reader r(std::vector<char>(data.begin() + static_cast<std::ptrdiff_t>(header.size()), data.end()));
    const auto dim = static_cast<Eigen::Index>(cfg.dimension());
    PropagatorGenerator::Spectrum sp;
    sp.eigenvalues.resize(dim);
    sp.eigenvectors.resize(dim, dim);
    sp.inverse_eigenvectors.resize(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (!r.get_complex(sp.eigenvalues[i])) {
            return std::nullopt;
        }
    }
    for (Eigen::MatrixXcd* m : {&sp.eigenvectors, &sp.inverse_eigenvectors}) {
        for (Eigen::Index i = 0; i < m->size(); ++i) {
            if (!r.get_complex(m->data()[i])) {
                return std::nullopt;
            }
        }
    }
    if (!r.at_end()) {
        return std::nullopt;
    }
    return PropagatorGenerator::from_spectrum(cfg, std::move(sp));
}

PropagatorGenerator GeneratorCache::get(const CavityConfig& cfg) const {
    if (!dir_) {
        return PropagatorGenerator::build(cfg);
    }
    if (auto cached = load_generator(*dir_, cfg)) {
        return std::move(*cached);
    }
    auto gen = PropagatorGenerator::build(cfg);
    save_generator(*dir_, gen);
    return gen;
}

}  // namespace cavharvest
