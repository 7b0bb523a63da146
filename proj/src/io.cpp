#include "gbo/io.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gbo/errors.hpp"
#include "gbo/lab.hpp"

namespace gbo {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts need swaps");

double RunConfig::resolved_s() const {
    if (s == "auto") return critical_index(k);
    return std::stod(s);
}

namespace {

std::string trim(const std::string& raw) {
    std::size_t a = raw.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = raw.find_last_not_of(" \t\r\n");
    return raw.substr(a, b - a + 1);
}

long parse_long(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        throw StructuralError(key + ": expected an integer, got '" + value +
                              "'");
    }
    if (used != value.size())
        throw StructuralError(key + ": expected an integer, got '" + value +
                              "'");
    return v;
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw StructuralError(key + ": expected a number, got '" + value +
                              "'");
    }
    if (used != value.size())
        throw StructuralError(key + ": expected a number, got '" + value +
                              "'");
    return v;
}

bool power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw StructuralError("config line is not key=value: '" + line +
                                  "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "k") {
            long v = parse_long(key, value);
            if (v < 3)
                throw StructuralError(
                    "k: supported range is k >= 3; got " + value);
            cfg.k = static_cast<int>(v);
        } else if (key == "s") {
            if (value != "auto") parse_double(key, value);
            cfg.s = value;
        } else if (key == "n") {
            long v = parse_long(key, value);
            if (!power_of_two(v) || v < 16)
                throw StructuralError(
                    "n: must be a power of two and >= 16; got " + value);
            cfg.n = static_cast<int>(v);
        } else if (key == "period") {
            double v = parse_double(key, value);
            if (!(v > 0.0) || !std::isfinite(v))
                throw StructuralError("period: must be positive; got " +
                                      value);
            cfg.period = v;
        } else if (key == "T") {
            double v = parse_double(key, value);
            if (!(v > 0.0) || !std::isfinite(v))
                throw StructuralError("T: must be positive; got " + value);
            cfg.T = v;
        } else if (key == "dt") {
            double v = parse_double(key, value);
            if (v == 0.0 || !std::isfinite(v))
                throw StructuralError("dt: must be nonzero and finite; got " +
                                      value);
            cfg.dt = v;
        } else if (key == "stride") {
            long v = parse_long(key, value);
            if (v < 1)
                throw StructuralError("stride: must be >= 1; got " + value);
            cfg.stride = v;
        } else if (key == "eps") {
            double v = parse_double(key, value);
            if (!(v > 0.0) || v >= 1.0)
                throw StructuralError("eps: must lie in (0, 1); got " + value);
            cfg.eps = v;
        } else if (key == "J") {
            long v = parse_long(key, value);
            if (v < 1) throw StructuralError("J: must be >= 1; got " + value);
            cfg.J = static_cast<int>(v);
        } else if (key == "Jsim") {
            long v = parse_long(key, value);
            if (v < 1)
                throw StructuralError("Jsim: must be >= 1; got " + value);
            cfg.Jsim = static_cast<int>(v);
        } else if (key == "seed") {
            long v = parse_long(key, value);
            if (v < 0)
                throw StructuralError("seed: must be >= 0; got " + value);
            cfg.seed = static_cast<std::uint64_t>(v);
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "workers") {
            long v = parse_long(key, value);
            if (v < 1)
                throw StructuralError("workers: must be >= 1; got " + value);
            cfg.workers = static_cast<int>(v);
        } else {
            throw StructuralError("unknown config key: " + key);
        }
    }
    return cfg;
}

// Execution plumbing (worker count, output paths) is omitted on purpose:
// reports must be byte-identical across worker counts and destinations.
nlohmann::json config_to_json(const RunConfig& cfg) {
    return nlohmann::json{{"k", cfg.k},
                          {"s", cfg.s},
                          {"s_resolved", cfg.resolved_s()},
                          {"n", cfg.n},
                          {"period", cfg.period},
                          {"T", cfg.T},
                          {"dt", cfg.dt},
                          {"stride", cfg.stride},
                          {"eps", cfg.eps},
                          {"J", cfg.J},
                          {"Jsim", cfg.Jsim},
                          {"seed", cfg.seed}};
}

std::string emit_ndjson(const Report& report) {
    nlohmann::json envelope{{"schema", report.schema},
                            {"command", report.command},
                            {"config", report.config},
                            {"input_hash", report.input_hash},
                            {"summary", report.summary}};
    std::string out = envelope.dump();
    out.push_back('\n');
    for (const auto& record : report.records) {
        out += record.dump();
        out.push_back('\n');
    }
    return out;
}

namespace {

std::string csv_cell(const nlohmann::json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += "\"\"";
            else quoted.push_back(c);
        }
        quoted.push_back('"');
        return quoted;
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned())
        return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
        return buf;
    }
    return v.dump();
}

}  // namespace

std::string emit_csv(const Report& report) {
    std::string out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        if (i) out.push_back(',');
        out += report.columns[i];
    }
    out.push_back('\n');
    for (const auto& record : report.records) {
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            if (i) out.push_back(',');
            auto it = record.find(report.columns[i]);
            if (it != record.end()) out += csv_cell(*it);
        }
        out.push_back('\n');
    }
    return out;
}

std::string sha1_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha1(),
                   nullptr) != 1)
        throw StructuralError("content hash failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_bytes(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StructuralError("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw StructuralError("short write: " + path);
}

namespace {

constexpr char kFieldMagic[8] = {'G', 'B', 'O', 'F', 'L', 'D', '0', '1'};
constexpr char kTrajMagic[8] = {'G', 'B', 'O', 'T', 'R', 'J', '0', '1'};

template <typename T>
void put(std::string& out, const T& v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

template <typename T>
T take(const std::string& bytes, std::size_t& cursor, const char* what) {
    if (cursor + sizeof(T) > bytes.size())
        throw StructuralError(std::string("truncated file while reading ") +
                              what);
    T v;
    std::memcpy(&v, bytes.data() + cursor, sizeof(T));
    cursor += sizeof(T);
    return v;
}

void put_samples(std::string& out, const Field& f) {
    const bool real = f.tag() == Parity::Real;
    put<std::uint8_t>(out, real ? 0 : 1);
    for (const complexd& v : f.values()) {
        put<double>(out, v.real());
        if (!real) put<double>(out, v.imag());
    }
}

Field take_samples(const std::string& bytes, std::size_t& cursor,
                   const SpectralGrid& grid) {
    const auto tag = take<std::uint8_t>(bytes, cursor, "sample tag");
    if (tag > 1) throw StructuralError("invalid sample tag");
    std::vector<complexd> vals(grid.size());
    for (auto& v : vals) {
        const double re = take<double>(bytes, cursor, "sample");
        const double im =
            tag == 1 ? take<double>(bytes, cursor, "sample") : 0.0;
        v = complexd(re, im);
    }
    return Field(grid, std::move(vals),
                 tag == 0 ? Parity::Real : Parity::Complex);
}

}  // namespace

void write_field(const std::string& path, const Field& f) {
    std::string out;
    out.append(kFieldMagic, sizeof(kFieldMagic));
    put<std::uint64_t>(out, f.grid().size());
    put<double>(out, f.grid().period());
    put_samples(out, f);
    write_file_bytes(path, out);
}

Field read_field(const std::string& path) {
    const std::string bytes = read_file_bytes(path);
    if (bytes.size() < sizeof(kFieldMagic) ||
        std::memcmp(bytes.data(), kFieldMagic, sizeof(kFieldMagic)) != 0)
        throw StructuralError("not a field snapshot file: " + path);
    std::size_t cursor = sizeof(kFieldMagic);
    const auto n = take<std::uint64_t>(bytes, cursor, "grid size");
    const auto period = take<double>(bytes, cursor, "period");
    SpectralGrid grid(static_cast<std::size_t>(n), period);
    Field f = take_samples(bytes, cursor, grid);
    if (cursor != bytes.size())
        throw StructuralError("trailing bytes in field file: " + path);
    return f;
}

void write_trajectory(const std::string& path, const Trajectory& u) {
    std::string out;
    out.append(kTrajMagic, sizeof(kTrajMagic));
    put<std::uint64_t>(out, u.grid().size());
    put<double>(out, u.grid().period());
    put<std::uint64_t>(out, u.node_count());
    put<double>(out, u.t0());
    put<double>(out, u.dt());
    for (std::size_t m = 0; m < u.node_count(); ++m)
        put_samples(out, u.frame(m));
    write_file_bytes(path, out);
}

Trajectory read_trajectory(const std::string& path) {
    const std::string bytes = read_file_bytes(path);
    if (bytes.size() < sizeof(kTrajMagic) ||
        std::memcmp(bytes.data(), kTrajMagic, sizeof(kTrajMagic)) != 0)
        throw StructuralError("not a trajectory file: " + path);
    std::size_t cursor = sizeof(kTrajMagic);
    const auto n = take<std::uint64_t>(bytes, cursor, "grid size");
    const auto period = take<double>(bytes, cursor, "period");
    const auto count = take<std::uint64_t>(bytes, cursor, "node count");
    const auto t0 = take<double>(bytes, cursor, "t0");
    const auto dt = take<double>(bytes, cursor, "dt");
    if (count < 1) throw StructuralError("trajectory needs >= 1 node");
    SpectralGrid grid(static_cast<std::size_t>(n), period);
    std::vector<Field> frames;
    frames.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t m = 0; m < count; ++m)
        frames.push_back(take_samples(bytes, cursor, grid));
    if (cursor != bytes.size())
        throw StructuralError("trailing bytes in trajectory file: " + path);
    return Trajectory(t0, dt, std::move(frames));
}

}  // namespace gbo
