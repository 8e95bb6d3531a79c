#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bulkedge/clifford.hpp"
#include "bulkedge/disorder.hpp"
#include "bulkedge/invariants.hpp"
#include "bulkedge/models.hpp"

namespace bulkedge {

// Schema violation; `field` is the dotted path of the offending entry.
struct SchemaError : std::runtime_error {
    std::string field;
    SchemaError(std::string f, const std::string& msg) : std::runtime_error(f + ": " + msg), field(std::move(f)) {}
};

enum class EdgeMethod { Auto, Conductance, Kramers, None };

struct ExperimentConfig {
    std::string name;
    Field mode = Field::Complex;
    std::string model = "haldane";
    ModelParams params;
    std::vector<long> L{24, 24};       // bulk patch and gap torus
    std::vector<long> ribbon{64, 24};  // edge geometry L1 x L2
    long depth = -1;                   // half-space cut; default L2/2 - 1
    DisorderParams disorder;           // period is filled with L
    Parity declared_trs = Parity::None;
    bool declared_trs_set = false;

    bool bulk = true;
    EdgeMethod edge = EdgeMethod::Auto;
    bool edge_conductance_extra = false;  // also report the conductance in real mode
    bool oracle = true;
    double gap_min = 1e-3;
    double open_gap_min = 1e-8;
    EdgeWindow window;
    long margin = 12;
    long edge_rows = -1;
    int flow_steps = 48;
    double flow_window = 0.6;

    std::string out_dir = ".";
    std::uint64_t seed = 1;

    nlohmann::json normalized;  // fully defaulted config, canonical key order
    std::uint64_t hash = 0;
    std::string hash_hex() const;
};

std::uint64_t fnv1a64(const std::string& bytes);

// `key.sub = value` lines, '#' comments; values are JSON literals or bare words.
nlohmann::json parse_cfg_text(const std::string& text);
nlohmann::json read_config_file(const std::string& path);
ExperimentConfig validate_config(const nlohmann::json& raw);
ExperimentConfig load_config(const std::string& path);

}  // namespace bulkedge
