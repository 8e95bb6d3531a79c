#include "bulkedge/experiment.hpp"

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "bulkedge/linalg.hpp"
#include "bulkedge/oracles.hpp"

namespace bulkedge {

using ojson = nlohmann::ordered_json;

namespace {

ojson tagged(double v, const char* tag) { return ojson{{"value", v}, {"tag", tag}}; }
ojson tagged(long v, const char* tag) { return ojson{{"value", v}, {"tag", tag}}; }

struct Built {
    std::shared_ptr<DisorderSpace> space;
    Element h;
    SymmetryData sym;
};

Built build_model(const ExperimentConfig& c) {
    Built b;
    b.space = std::make_shared<DisorderSpace>(c.disorder);
    if (c.model == "atomic") {
        b.h = atomic_limit(c.params, *b.space);
    } else {
        b.h = haldane(c.params, *b.space);
        if (c.model == "kane_mele") {
            auto km = kane_mele(b.h, c.params.r, *b.space);
            b.h = km.h;
            b.sym = km.sym;
        }
    }
    verify_symmetry_operators(b.sym);
    return b;
}

oracle::BlochParams bloch_params(const ExperimentConfig& c) {
    oracle::BlochParams p{c.params.t, c.params.t2, c.params.phi, c.params.M, c.params.r, c.params.mu};
    if (c.model == "atomic") p.t = p.t2 = 0.0;
    return p;
}

struct SampleResult {
    double gap = 0.0;
    IndexValue bulk;
    bool has_bulk = false;
    double sigma = std::nan("");
    std::size_t edge_rank = 0;
    long flow_crossings = -1;
    double km_sigma = std::nan("");
};

double edge_sigma(const Element& h, std::size_t pt, const ExperimentConfig& c, const RVec& torus) {
    validate_window(c.window, c.params.mu, torus);
    auto ribbon = LatticeGeometry::open(c.ribbon, h.context()->nu);
    auto half = half_space_compress(represent(h, pt, ribbon), c.depth);
    auto eu = edge_unitary(half, c.window);
    return edge_conductance(eu.U, ConductanceOptions{c.margin, c.edge_rows});
}

SampleResult run_sample(const Built& b, const ExperimentConfig& c, int s) {
    SampleResult r;
    std::size_t pt = b.space->base_point(s);
    r.gap = verify_bulk_gap(b.h, pt, c.L, c.params.mu, c.gap_min);
    RVec torus;
    if (c.edge == EdgeMethod::Conductance || c.edge_conductance_extra)
        torus = eigvalsh(represent(b.h, pt, LatticeGeometry::periodic(c.L, b.h.context()->nu)).m);
    if (c.bulk) {
        auto F = fermi_projection(represent(b.h, pt, LatticeGeometry::open(c.L, b.h.context()->nu)), c.params.mu,
                                  c.open_gap_min);
        r.bulk = c.mode == Field::Complex ? chern_index(F) : z2_index(F, b.sym);
        r.has_bulk = true;
    }
    if (c.edge == EdgeMethod::Conductance) r.sigma = edge_sigma(b.h, pt, c, torus);
    if (c.edge == EdgeMethod::Kramers && !b.space->clean()) {
        // cylinder circumference equal to the disorder period keeps the wrap covariant
        auto flow = edge_spectral_flow(b.h, pt, c.L[0], c.ribbon[1], c.params.mu, c.flow_steps, c.flow_window,
                                       Exec::Serial);
        r.flow_crossings = flow.crossings;
    }
    if (c.edge_conductance_extra) r.km_sigma = edge_sigma(b.h, pt, c, torus);
    return r;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

nlohmann::ordered_json run_oracle(const std::string& name, const std::map<std::string, double>& params) {
    oracle::BlochParams p;
    double W = 0.0, grid = 48, rows = 24, nk = 96;
    for (const auto& [k, v] : params) {
        if (k == "t") p.t = v;
        else if (k == "t2") p.t2 = v;
        else if (k == "phi") p.phi = v;
        else if (k == "M") p.M = v;
        else if (k == "r") p.r = v;
        else if (k == "mu") p.mu = v;
        else if (k == "W" || k == "lambda") W = std::max(W, std::abs(v));
        else if (k == "grid") grid = v;
        else if (k == "rows") rows = v;
        else if (k == "nk") nk = v;
        else throw OracleError("unknown oracle parameter '" + k + "'");
    }
    if (W != 0.0) throw OracleError("oracles need a clean translation-invariant model (W = 0)");
    if (name == "kramers-count" && !params.count("r")) p.r = 0.3;
    ojson out;
    out["oracle"] = name;
    out["params"] = {{"t", p.t}, {"t2", p.t2}, {"phi", p.phi}, {"M", p.M}, {"r", p.r}, {"mu", p.mu}};
    if (name == "berry-chern") {
        int g = int(grid);
        if (g < 4) throw OracleError("grid must be at least 4");
        auto h = [&](double a, double b) { return oracle::haldane_bloch(p, a, b); };
        auto fine = oracle::berry_chern(h, p.mu, g);
        auto coarse = oracle::berry_chern(h, p.mu, g / 2);
        out["value"] = tagged(fine.rounded, "oracle");
        out["raw"] = tagged(fine.chern, "oracle");
        out["convergence"] = {{"grid", g},
                              {"coarse_grid", g / 2},
                              {"coarse_value", tagged(coarse.rounded, "oracle")},
                              {"max_plaquette_flux", tagged(fine.max_flux, "oracle")},
                              {"min_direct_gap", tagged(fine.min_direct_gap, "oracle")},
                              {"converged", fine.rounded == coarse.rounded && fine.max_flux < 1.0}};
    } else if (name == "edge-bands" || name == "kramers-count") {
        int R = int(rows), K = int(nk);
        if (R < 4 || K < 8) throw OracleError("rows >= 4 and nk >= 8 required");
        bool km = name == "kramers-count";
        auto bands = [&](int rr, int kk) {
            return km ? oracle::kane_mele_cylinder(p, rr, kk) : oracle::haldane_cylinder(p, rr, kk);
        };
        auto fine = bands(R, K);
        auto check = bands(R + R / 2, 2 * K);
        long v = km ? fine.kramers_pairs() : fine.top_crossings;
        long vc = km ? check.kramers_pairs() : check.top_crossings;
        out["value"] = tagged(v, "oracle");
        out["signed_crossings"] = tagged(fine.top_signed, "oracle");
        out["convergence"] = {{"rows", R},
                              {"nk", K},
                              {"refined_rows", R + R / 2},
                              {"refined_nk", 2 * K},
                              {"refined_value", tagged(vc, "oracle")},
                              {"min_bulk_gap", tagged(fine.min_bulk_gap, "oracle")},
                              {"converged", v == vc && fine.min_bulk_gap > 1e-3}};
    } else {
        throw OracleError("unknown oracle '" + name + "' (berry-chern, edge-bands, kramers-count)");
    }
    return out;
}

Report run_experiment(const ExperimentConfig& c, Exec exec) {
    Report rep;
    ojson& j = rep.json;
    j["tool"] = "bulkedge";
    j["config_hash"] = c.hash_hex();
    j["config"] = ojson::parse(c.normalized.dump());

    // orientation of the relabelling e_d -> e_1 and of the top edge used by the ribbon
    const int theorem_sign = orientation_sign({2, 1});
    const int edge_orientation = -1;
    j["signs"] = {{"theorem_sign", tagged(long(theorem_sign), "paper-eq")},
                  {"edge_orientation", tagged(long(edge_orientation), "plumbing")}};

    const int n = c.disorder.samples;
    std::vector<SampleResult> results(n);
    std::vector<std::exception_ptr> errors(n);
    try {
        Built b = build_model(c);
        auto one = [&](int s) {
            try {
                results[s] = run_sample(b, c, s);
            } catch (...) {
                errors[s] = std::current_exception();
            }
        };
        if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
            for (int s = 0; s < n; ++s) one(s);
        } else {
            for (int s = 0; s < n; ++s) one(s);
        }
        // report the lowest failing sample so the outcome does not depend on scheduling
        for (int s = 0; s < n; ++s)
            if (errors[s]) {
                j["failed_sample"] = s;
                std::rethrow_exception(errors[s]);
            }

        std::ostringstream csv;
        csv << "sample,gap,bulk_raw,bulk_value,bulk_kernel,edge_sigma,edge_crossings,z2_edge_sigma\n";
        csv << "# provenance,plumbing,paper-eq,paper-eq,paper-eq,paper-eq,plumbing,paper-eq\n";
        ojson rows = ojson::array();
        for (int s = 0; s < n; ++s) {
            const auto& r = results[s];
            ojson row;
            row["sample"] = s;
            row["gap"] = tagged(r.gap, "plumbing");
            if (r.has_bulk) {
                row["bulk_raw"] = tagged(r.bulk.raw, "paper-eq");
                row["bulk_value"] = tagged(r.bulk.value, "paper-eq");
                row["bulk_kernel_count"] = tagged(r.bulk.kernel_value, "paper-eq");
                row["kernel_gap_ratio"] = tagged(r.bulk.cut.ratio, "plumbing");
                if (c.mode == Field::Real) row["kramers_splitting"] = tagged(r.bulk.kramers_splitting, "paper-eq");
                else row["chern_residual"] = tagged(r.bulk.residual, "plumbing");
            }
            if (!std::isnan(r.sigma)) row["edge_sigma"] = tagged(r.sigma, "paper-eq");
            if (r.flow_crossings >= 0) row["edge_crossings"] = tagged(r.flow_crossings, "plumbing");
            if (!std::isnan(r.km_sigma)) row["z2_edge_sigma"] = tagged(r.km_sigma, "paper-eq");
            rows.push_back(row);
            csv << s << ',' << fmt(r.gap) << ',' << (r.has_bulk ? fmt(r.bulk.raw) : "") << ','
                << (r.has_bulk ? std::to_string(r.bulk.value) : "") << ','
                << (r.has_bulk ? std::to_string(r.bulk.kernel_value) : "") << ',' << fmt(r.sigma) << ','
                << (r.flow_crossings >= 0 ? std::to_string(r.flow_crossings) : "") << ',' << fmt(r.km_sigma) << '\n';
        }
        j["samples"] = rows;
        rep.csv = csv.str();

        ojson sum;
        bool pass = true;
        std::vector<std::string> reasons;
        long bulk = 0;
        if (c.bulk) {
            bulk = results[0].bulk.value;
            bool stable = true;
            for (const auto& r : results) {
                stable = stable && r.bulk.value == bulk;
                if (c.mode == Field::Complex && r.bulk.kernel_value != r.bulk.value) {
                    pass = false;
                    reasons.push_back("kernel cross-check disagrees with the trace formula");
                }
            }
            sum["bulk"] = tagged(bulk, "paper-eq");
            sum["bulk_stable_across_samples"] = stable;
            if (!stable) {
                pass = false;
                reasons.push_back("bulk index differs between samples");
            }
        }
        if (c.edge == EdgeMethod::Conductance) {
            double mean = 0.0;
            for (const auto& r : results) mean += r.sigma / n;
            double pairing = edge_orientation * mean + 0.0;  // no negative zero in reports
            sum["edge_sigma"] = tagged(mean, "paper-eq");
            sum["edge_pairing"] = tagged(pairing, "paper-eq");
            sum["edge"] = tagged(std::lround(mean), "paper-eq");
            if (c.bulk) {
                double expect = double(bulk);
                double dev = std::abs(theorem_sign * pairing - expect);
                double tol = 0.05 * std::max(1.0, std::abs(expect));
                sum["bulk_edge_deviation"] = tagged(dev, "paper-eq");
                if (dev > tol) {
                    pass = false;
                    reasons.push_back("edge conductance deviates from the bulk index");
                }
            }
        }
        if (c.edge == EdgeMethod::Kramers) {
            long pairs = 0;
            bool clean = results[0].flow_crossings < 0;
            if (clean) {
                auto orc = run_oracle("kramers-count", {{"t", c.params.t}, {"t2", c.params.t2}, {"phi", c.params.phi},
                                                        {"M", c.params.M}, {"r", c.params.r}, {"mu", c.params.mu},
                                                        {"rows", double(c.ribbon[1])}, {"nk", double(4 * c.ribbon[0])}});
                pairs = orc["value"]["value"].get<long>();
                sum["edge_oracle"] = orc;
            } else {
                pairs = results[0].flow_crossings / 2;
                for (const auto& r : results)
                    if (r.flow_crossings / 2 % 2 != pairs % 2) {
                        pass = false;
                        reasons.push_back("edge Kramers parity differs between samples");
                    }
            }
            const char* tag = clean ? "oracle" : "plumbing";
            sum["edge_kramers_pairs"] = tagged(pairs, tag);
            sum["edge"] = tagged(pairs % 2, tag);
            if (c.bulk && pairs % 2 != bulk) {
                pass = false;
                reasons.push_back("Z2 bulk index differs from the edge Kramers parity");
            }
        }
        if (c.edge_conductance_extra) {
            double m = 0.0;
            for (const auto& r : results) m = std::max(m, std::abs(r.km_sigma));
            sum["z2_edge_sigma_max_abs"] = tagged(m, "paper-eq");
        }
        if (c.oracle && c.mode == Field::Complex && b.space->clean()) {
            auto bp = bloch_params(c);
            auto orc = oracle::berry_chern([&](double a, double bb) { return oracle::haldane_bloch(bp, a, bb); }, c.params.mu, 48);
            sum["bulk_oracle"] = tagged(orc.rounded, "oracle");
            if (c.bulk && orc.rounded != bulk) {
                pass = false;
                reasons.push_back("real-space Chern number differs from the Berry-curvature oracle");
            }
        }
        sum["reasons"] = reasons;
        j["summary"] = sum;
        rep.verdict = pass ? "pass" : "fail";
        rep.exit_code = pass ? kPass : kVerdictFail;
    } catch (const GapClosedError& e) {
        j["error"] = e.what();
        rep.verdict = "error";
        rep.exit_code = kGapClosed;
    } catch (const InconclusiveError& e) {
        j["error"] = e.what();
        rep.verdict = "error";
        rep.exit_code = kInconclusive;
    } catch (const ConfigError& e) {
        j["error"] = e.what();
        rep.verdict = "error";
        rep.exit_code = kSchema;
    } catch (const std::exception& e) {
        j["error"] = e.what();
        rep.verdict = "error";
        rep.exit_code = kInternal;
    }
    j["verdict"] = rep.verdict;
    j["exit_code"] = rep.exit_code;
    return rep;
}

int run_to_files(const ExperimentConfig& c, Exec exec) {
    Report r = run_experiment(c, exec);
    std::filesystem::create_directories(c.out_dir);
    auto base = std::filesystem::path(c.out_dir) / c.name;
    std::ofstream(base.string() + ".json") << r.json.dump(2) << '\n';
    if (!r.csv.empty()) std::ofstream(base.string() + ".csv") << r.csv;
    return r.exit_code;
}

}  // namespace bulkedge
