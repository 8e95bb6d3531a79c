#pragma once
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace bulkedge {

// Finite union of periodic Z^d orbits: a point is (sample, offset mod period).
struct Orbits {
    int d = 0;
    std::vector<int> period;
    int samples = 1;

    Orbits() = default;
    Orbits(int d_, std::vector<int> period_, int samples_);

    std::size_t cells() const { return cells_; }
    std::size_t n_points() const { return cells_ * std::size_t(samples); }
    std::size_t point(int sample, const std::vector<long>& x) const;
    std::size_t shift(std::size_t id, const std::vector<long>& n) const;
    int sample_of(std::size_t id) const { return int(id / cells_); }
    std::vector<long> offset_of(std::size_t id) const;

private:
    std::size_t cells_ = 1;
};

enum class DisorderKind { Point, Iid, Quasiperiodic };

std::string to_string(DisorderKind k);
DisorderKind disorder_kind_from_string(const std::string& s);

// SplitMix64 stream: output number k (0-based) of the generator seeded with `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k);
double unit_interval(std::uint64_t bits);

struct DisorderParams {
    DisorderKind kind = DisorderKind::Point;
    int d = 2;
    int orbitals = 1;       // on-site values per lattice cell
    int samples = 1;
    std::vector<int> period;  // empty: 1 for point space, required otherwise
    double W = 0.0;         // iid: values uniform in [-W/2, W/2]
    double lambda = 0.0;    // quasiperiodic amplitude
    std::uint64_t seed = 0;
};

class DisorderSpace {
public:
    explicit DisorderSpace(const DisorderParams& p);

    static std::shared_ptr<const DisorderSpace> point(int d, int orbitals = 1);

    const DisorderParams& params() const { return p_; }
    DisorderKind kind() const { return p_.kind; }
    std::shared_ptr<const Orbits> orbits() const { return orbits_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& beta() const { return beta_; }
    int samples() const { return p_.samples; }
    bool clean() const;

    // On-site value of the given orbital at point id.
    double value(std::size_t id, int orbital) const;
    std::size_t base_point(int sample) const;

private:
    DisorderParams p_;
    std::shared_ptr<const Orbits> orbits_;
    std::vector<double> weights_;
    std::vector<double> beta_;
    std::vector<double> phase_;
};

struct DisorderConfig {
    const DisorderSpace* space = nullptr;
    std::size_t id = 0;

    DisorderConfig shifted(const std::vector<long>& n) const;
    double at(const std::vector<long>& site, int orbital) const;
};

DisorderConfig shift(const DisorderConfig& omega, const std::vector<long>& n);

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::vector<double> values;
};

enum class Exec { Serial, Parallel };

Estimate average(const std::function<double(const DisorderConfig&)>& observable, const DisorderSpace& space,
                 int count, Exec exec = Exec::Parallel);

}  // namespace bulkedge
