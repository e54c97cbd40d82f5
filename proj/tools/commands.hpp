#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "drot/lattice_map.hpp"

namespace drot::cli {

enum class Format { Csv, Json };

struct RunConfig {
    std::optional<Lambda> lambda;
    std::optional<i64> e;
    std::optional<i64> e_max;
    std::optional<Rational> value;  // polygon: explicit level
    std::optional<LatticePoint> seed;
    std::optional<std::pair<i64, i64>> window;
    i64 cap = 0;                 // 0: command default
    std::string out;             // empty: stdout
    Format format = Format::Csv;
    bool corrupt = false;        // verify: perturb Phi to exercise the failure path
};

// "x,y" -> pair; throws std::invalid_argument.
std::pair<i64, i64> parse_pair(const std::string& text);

// Each command writes to os and returns the process exit status.
int cmd_orbit(const RunConfig& cfg, std::ostream& os);
int cmd_period_scan(const RunConfig& cfg, std::ostream& os);
int cmd_polygon(const RunConfig& cfg, std::ostream& os);
int cmd_vertex_list(const RunConfig& cfg, std::ostream& os);
int cmd_critical_numbers(const RunConfig& cfg, std::ostream& os);
int cmd_density(const RunConfig& cfg, std::ostream& os);
int cmd_verify(const RunConfig& cfg, std::ostream& os);

// Points z of A(r, lambda) with v(z) != w(lambda z) outside Lambda u {0}.
i64 transition_window_counterexamples(const Lambda& lam, i64 r);

} // namespace drot::cli
