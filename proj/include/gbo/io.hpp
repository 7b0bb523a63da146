#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gbo/field.hpp"
#include "gbo/trajectory.hpp"

namespace gbo {

/// Validated run parameters shared by the command-line tools. Defaults:
/// n = 1024, period = 64 * 2 pi, eps = 1/8, J = 3, Jsim = 2.
struct RunConfig {
    int k = 4;
    std::string s = "auto";  // "auto" resolves to the critical index of k
    int n = 1024;
    double period = 128.0 * 3.14159265358979323846;
    double T = 1.0;
    double dt = 1e-3;
    long stride = 10;
    double eps = 0.125;
    int J = 3;
    int Jsim = 2;
    std::uint64_t seed = 7;
    std::string out;
    int workers = 0;  // 0 means unset; resolution falls back to GBO_WORKERS

    double resolved_s() const;
};

/// key=value lines, '#' comments. Unknown keys and out-of-range values are
/// rejected with the key named in the message. Empty input keeps defaults.
RunConfig parse_config(const std::string& text);

nlohmann::json config_to_json(const RunConfig& cfg);

/// Report envelope. NDJSON: one envelope line carrying schema, command,
/// config echo, input hash and summary, then one line per record. CSV: the
/// declared columns as a header row, records beneath, 17 significant
/// digits for floating-point cells.
struct Report {
    std::string schema = "gbo.report.v1";
    std::string command;
    nlohmann::json config;
    std::string input_hash;
    nlohmann::json summary;
    std::vector<nlohmann::json> records;
    std::vector<std::string> columns;
};

std::string emit_ndjson(const Report& report);
std::string emit_csv(const Report& report);

/// SHA-1 content hash, lowercase hex.
std::string sha1_hex(std::string_view bytes);

std::string read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::string_view bytes);

/// Field snapshot format: magic "GBOFLD01", little-endian u64 n,
/// f64 period, u8 tag (0 real / 1 complex), then n (real) or 2n
/// (complex, interleaved) f64 samples. Round-trips are bit-exact.
void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);

/// Trajectory format: magic "GBOTRJ01", u64 n, f64 period, u64 node count,
/// f64 t0, f64 dt, then per frame u8 tag + samples as in the field format.
void write_trajectory(const std::string& path, const Trajectory& u);
Trajectory read_trajectory(const std::string& path);

}  // namespace gbo
