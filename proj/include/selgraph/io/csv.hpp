#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "selgraph/errors.hpp"

namespace selgraph {

// Replica CSV contract. One file per replica, UTF-8, LF line endings,
// header `replica,n,d,count_all,count_selected`. Rows are grouped by
// checkpoint in increasing n; within a checkpoint the sentinel row d = -1
// comes first (count_all = vertex count, count_selected = s_size), then the
// overflow row d = -2 with the mass beyond the persistence truncation
// d_max, then ascending degrees with a nonzero count.

inline constexpr int kSentinelSize = -1;
inline constexpr int kSentinelOverflow = -2;

inline std::string replica_file_name(std::uint32_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "replica_%03u.csv", index);
    return buf;
}

inline std::string initdeg_file_name(std::uint32_t index) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "replica_%03u_initdeg.csv", index);
    return buf;
}

/// One parsed checkpoint of a replica file (plus, when present, the
/// cumulative initial-degree histograms from the companion file).
struct LoadedCheckpoint {
    std::uint64_t n = 0;
    std::uint64_t vertex_count = 0;
    std::uint64_t s_size = 0;
    std::int64_t overflow_all = 0;
    std::int64_t overflow_sel = 0;
    std::vector<std::int64_t> x;
    std::vector<std::int64_t> x_star;
    std::vector<std::int64_t> new_deg;     // cumulative I[i, d] counts
    std::vector<std::int64_t> new_deg_sel; // cumulative I*[i, d] counts
};

struct LoadedReplica {
    std::uint32_t index = 0;
    std::vector<LoadedCheckpoint> checkpoints; // ascending n
};

namespace detail {

inline std::int64_t parse_int(std::string_view field, const std::string& context) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw ConfigError("bad integer field '" + std::string(field) + "' in " + context);
    return value;
}

inline void grow_set(std::vector<std::int64_t>& v, std::size_t d, std::int64_t count) {
    if (d >= v.size()) v.resize(d + 1, 0);
    v[d] = count;
}

} // namespace detail

inline LoadedReplica read_replica_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "replica,n,d,count_all,count_selected")
        throw ConfigError("bad header in " + path.string());
    LoadedReplica rep;
    LoadedCheckpoint* current = nullptr;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::int64_t f[5];
        std::size_t pos = 0;
        for (int i = 0; i < 5; ++i) {
            const std::size_t next = i < 4 ? line.find(',', pos) : line.size();
            if (next == std::string::npos) throw ConfigError("short row in " + path.string());
            f[i] = detail::parse_int(std::string_view(line).substr(pos, next - pos),
                                     path.string());
            pos = next + 1;
        }
        rep.index = static_cast<std::uint32_t>(f[0]);
        const auto n = static_cast<std::uint64_t>(f[1]);
        if (current == nullptr || current->n != n) {
            rep.checkpoints.emplace_back();
            current = &rep.checkpoints.back();
            current->n = n;
        }
        const auto d = f[2];
        if (d == kSentinelSize) {
            current->vertex_count = static_cast<std::uint64_t>(f[3]);
            current->s_size = static_cast<std::uint64_t>(f[4]);
        } else if (d == kSentinelOverflow) {
            current->overflow_all = f[3];
            current->overflow_sel = f[4];
        } else if (d >= 0) {
            detail::grow_set(current->x, static_cast<std::size_t>(d), f[3]);
            detail::grow_set(current->x_star, static_cast<std::size_t>(d), f[4]);
        } else {
            throw ConfigError("unknown sentinel degree in " + path.string());
        }
    }
    return rep;
}

inline void read_initdeg_csv(const std::filesystem::path& path, LoadedReplica& rep) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "replica,n,d,count_new,count_new_selected")
        throw ConfigError("bad header in " + path.string());
    std::size_t cp_index = 0;
    LoadedCheckpoint* current = nullptr;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::int64_t f[5];
        std::size_t pos = 0;
        for (int i = 0; i < 5; ++i) {
            const std::size_t next = i < 4 ? line.find(',', pos) : line.size();
            if (next == std::string::npos) throw ConfigError("short row in " + path.string());
            f[i] = detail::parse_int(std::string_view(line).substr(pos, next - pos),
                                     path.string());
            pos = next + 1;
        }
        const auto n = static_cast<std::uint64_t>(f[1]);
        if (current == nullptr || current->n != n) {
            while (cp_index < rep.checkpoints.size() && rep.checkpoints[cp_index].n != n)
                ++cp_index;
            if (cp_index >= rep.checkpoints.size())
                throw ConfigError("initdeg checkpoint n=" + std::to_string(n) +
                                  " missing from replica file");
            current = &rep.checkpoints[cp_index];
        }
        detail::grow_set(current->new_deg, static_cast<std::size_t>(f[2]), f[3]);
        detail::grow_set(current->new_deg_sel, static_cast<std::size_t>(f[2]), f[4]);
    }
}

/// Load every replica of a finished run directory.
inline std::vector<LoadedReplica> load_run_replicas(const std::filesystem::path& dir,
                                                    std::uint32_t replicas) {
    std::vector<LoadedReplica> out;
    out.reserve(replicas);
    for (std::uint32_t r = 0; r < replicas; ++r) {
        LoadedReplica rep = read_replica_csv(dir / replica_file_name(r));
        const auto initdeg = dir / initdeg_file_name(r);
        if (std::filesystem::exists(initdeg)) read_initdeg_csv(initdeg, rep);
        if (rep.checkpoints.empty())
            throw ConfigError("replica file " + std::to_string(r) + " has no checkpoints");
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace selgraph
