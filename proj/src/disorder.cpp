#include "bulkedge/disorder.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bulkedge {

Orbits::Orbits(int d_, std::vector<int> period_, int samples_) : d(d_), period(std::move(period_)), samples(samples_) {
    if (int(period.size()) != d) throw std::invalid_argument("Orbits: period length must equal d");
    if (samples < 1) throw std::invalid_argument("Orbits: need at least one sample");
    cells_ = 1;
    for (int p : period) {
        if (p < 1) throw std::invalid_argument("Orbits: periods must be positive");
        cells_ *= std::size_t(p);
    }
}

std::size_t Orbits::point(int sample, const std::vector<long>& x) const {
    std::size_t flat = 0, stride = 1;
    for (int j = 0; j < d; ++j) {
        long p = period[j];
        long r = ((x[j] % p) + p) % p;
        flat += std::size_t(r) * stride;
        stride *= std::size_t(p);
    }
    return std::size_t(sample) * cells_ + flat;
}

std::vector<long> Orbits::offset_of(std::size_t id) const {
    std::size_t flat = id % cells_;
    std::vector<long> x(d);
    for (int j = 0; j < d; ++j) {
        x[j] = long(flat % std::size_t(period[j]));
        flat /= std::size_t(period[j]);
    }
    return x;
}

std::size_t Orbits::shift(std::size_t id, const std::vector<long>& n) const {
    auto x = offset_of(id);
    for (int j = 0; j < d; ++j) x[j] += n.at(j);
    return point(sample_of(id), x);
}

std::string to_string(DisorderKind k) {
    switch (k) {
        case DisorderKind::Point: return "point";
        case DisorderKind::Iid: return "iid";
        case DisorderKind::Quasiperiodic: return "quasiperiodic";
    }
    return "?";
}

DisorderKind disorder_kind_from_string(const std::string& s) {
    if (s == "point" || s == "none") return DisorderKind::Point;
    if (s == "iid" || s == "iid-random") return DisorderKind::Iid;
    if (s == "quasiperiodic") return DisorderKind::Quasiperiodic;
    throw std::invalid_argument("unknown disorder kind '" + s + "'");
}

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double unit_interval(std::uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

DisorderSpace::DisorderSpace(const DisorderParams& p) : p_(p) {
    if (p_.d < 1) throw std::invalid_argument("disorder: d must be positive");
    if (p_.orbitals < 1) throw std::invalid_argument("disorder: orbitals must be positive");
    if (p_.samples < 1) throw std::invalid_argument("disorder: samples must be positive");
    if (p_.kind == DisorderKind::Point) {
        p_.period.assign(p_.d, 1);
    } else if (p_.period.empty()) {
        throw std::invalid_argument("disorder: period required for " + to_string(p_.kind));
    }
    if (int(p_.period.size()) != p_.d) throw std::invalid_argument("disorder: period length must equal d");
    if (p_.W < 0) throw std::invalid_argument("disorder: W must be non-negative");
    orbits_ = std::make_shared<Orbits>(p_.d, p_.period, p_.samples);
    weights_.assign(p_.samples, 1.0 / p_.samples);

    if (p_.kind == DisorderKind::Quasiperiodic) {
        // Best rational approximation a/P of the golden mean compatible with each period.
        const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
        for (int P : p_.period) beta_.push_back(std::round(golden * P) / P);
        for (int s = 0; s < p_.samples; ++s) phase_.push_back(unit_interval(splitmix64_at(p_.seed, s)));
    }
}

std::shared_ptr<const DisorderSpace> DisorderSpace::point(int d, int orbitals) {
    DisorderParams p;
    p.d = d;
    p.orbitals = orbitals;
    return std::make_shared<DisorderSpace>(p);
}

bool DisorderSpace::clean() const {
    return p_.kind == DisorderKind::Point || (p_.kind == DisorderKind::Iid && p_.W == 0.0) ||
           (p_.kind == DisorderKind::Quasiperiodic && p_.lambda == 0.0);
}

std::size_t DisorderSpace::base_point(int sample) const {
    return orbits_->point(sample, std::vector<long>(p_.d, 0));
}

double DisorderSpace::value(std::size_t id, int orbital) const {
    switch (p_.kind) {
        case DisorderKind::Point: return 0.0;
        case DisorderKind::Iid: {
            std::uint64_t k = std::uint64_t(id) * std::uint64_t(p_.orbitals) + std::uint64_t(orbital);
            return p_.W * (unit_interval(splitmix64_at(p_.seed, k)) - 0.5);
        }
        case DisorderKind::Quasiperiodic: {
            auto x = orbits_->offset_of(id);
            double arg = phase_[orbits_->sample_of(id)];
            for (int j = 0; j < p_.d; ++j) arg += beta_[j] * double(x[j]);
            return p_.lambda * std::cos(2.0 * std::numbers::pi * arg);
        }
    }
    return 0.0;
}

DisorderConfig DisorderConfig::shifted(const std::vector<long>& n) const {
    return DisorderConfig{space, space->orbits()->shift(id, n)};
}

double DisorderConfig::at(const std::vector<long>& site, int orbital) const {
    return space->value(space->orbits()->shift(id, site), orbital);
}

DisorderConfig shift(const DisorderConfig& omega, const std::vector<long>& n) { return omega.shifted(n); }

Estimate average(const std::function<double(const DisorderConfig&)>& observable, const DisorderSpace& space,
                 int count, Exec exec) {
    if (count < 1) throw std::invalid_argument("average: empty sample set");
    if (count > space.samples()) throw std::invalid_argument("average: count exceeds available samples");
    Estimate e;
    e.values.assign(count, 0.0);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int s = 0; s < count; ++s) e.values[s] = observable(DisorderConfig{&space, space.base_point(s)});
    } else {
        for (int s = 0; s < count; ++s) e.values[s] = observable(DisorderConfig{&space, space.base_point(s)});
    }
    double wsum = 0.0;
    for (int s = 0; s < count; ++s) {
        e.mean += space.weights()[s] * e.values[s];
        wsum += space.weights()[s];
    }
    e.mean /= wsum;
    if (count > 1) {
        double var = 0.0;
        for (double v : e.values) var += (v - e.mean) * (v - e.mean);
        var /= double(count - 1);
        e.stderr_ = std::sqrt(var / double(count));
    }
    return e;
}

}  // namespace bulkedge
