#include <cstdlib>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <omp.h>

#include "bulkedge/experiment.hpp"

using namespace bulkedge;

namespace {

void apply_thread_env() {
    if (const char* v = std::getenv("BULKEDGE_THREADS")) {
        int n = std::atoi(v);
        if (n > 0) omp_set_num_threads(n);
    }
}

int load(const std::string& path, ExperimentConfig& cfg) {
    try {
        cfg = load_config(path);
        return kPass;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kSchema;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kSchema;
    }
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();
    CLI::App app{"bulk-edge correspondence experiments"};
    app.require_subcommand(1);

    std::string run_path, validate_path, oracle_name;
    std::vector<std::string> oracle_params;
    bool serial = false;
    auto* run = app.add_subcommand("run", "run an experiment config and write JSON and CSV reports");
    run->add_option("config", run_path, "config file (.cfg or .json)")->required();
    run->add_flag("--serial", serial, "disable the parallel sample loop");
    auto* validate = app.add_subcommand("validate", "check a config against the schema");
    validate->add_option("config", validate_path, "config file (.cfg or .json)")->required();
    auto* orc = app.add_subcommand("oracle", "independent k-space oracles");
    orc->add_option("name", oracle_name, "berry-chern | edge-bands | kramers-count")->required();
    orc->add_option("--param", oracle_params, "k=v model or resolution parameter")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kSchema;
    }

    try {
        if (*run) {
            ExperimentConfig cfg;
            if (int rc = load(run_path, cfg)) return rc;
            int rc = run_to_files(cfg, serial ? Exec::Serial : Exec::Parallel);
            std::cout << cfg.name << ": exit " << rc << " (reports in " << cfg.out_dir << ")\n";
            return rc;
        }
        if (*validate) {
            ExperimentConfig cfg;
            if (int rc = load(validate_path, cfg)) return rc;
            std::cout << cfg.normalized.dump(2) << "\nconfig_hash " << cfg.hash_hex() << '\n';
            return kPass;
        }
        if (*orc) {
            std::map<std::string, double> params;
            for (const auto& kv : oracle_params) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    std::cerr << "bad --param '" << kv << "', expected k=v\n";
                    return kSchema;
                }
                try {
                    params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
                } catch (const std::exception&) {
                    std::cerr << "bad --param value in '" << kv << "'\n";
                    return kSchema;
                }
            }
            try {
                std::cout << run_oracle(oracle_name, params).dump(2) << '\n';
            } catch (const OracleError& e) {
                std::cerr << "oracle refused: " << e.what() << '\n';
                return kSchema;
            }
            return kPass;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
