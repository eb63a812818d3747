#include "levygame/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace levygame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based stream split: every (path, tag) pair maps to an
/// independent seed, so results do not depend on worker count.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t path,
                          std::uint64_t tag) {
    std::uint64_t s = seed;
    (void)splitmix64(s);
    s ^= (path + 1) * 0xBF58476D1CE4E5B9ULL;
    (void)splitmix64(s);
    s ^= (tag + 1) * 0x94D049BB133111EBULL;
    return splitmix64(s);
}

/// xoshiro256++ with explicit inverse-transform / polar sampling; the draw
/// sequence is fully specified (std::*_distribution is
/// implementation-defined) and the generator is cheap enough for the
/// fine-grid path loop.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) {
        for (auto& word : state_) word = splitmix64(seed);
    }

    std::uint64_t next() {
        const std::uint64_t result =
            rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    double uniform01() { // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double exponential(double rate) {
        return -std::log1p(-uniform01()) / rate;
    }

    double normal() { // Marsaglia polar
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct PathResult {
    double payoff_c = 0.0;
    double payoff_p = 0.0;
    bool truncated = false;
};

struct PathProblem {
    double mu, nu, alpha, beta, lambda, q;
    double x0, a, l, b;
    double dt, horizon;
    std::uint64_t seed;
    bool antithetic;
    const Reward* reward_c;
    const Reward* reward_p;
};

PathResult simulate_path(const PathProblem& p, std::uint64_t index) {
    if (p.x0 <= p.a) // stopped at once: downward passage is creeping
        return {p.reward_c->value(p.x0), 0.0, false};
    if (p.x0 > p.b) return {0.0, 0.0, false};

    const std::uint64_t key = p.antithetic ? index / 2 : index;
    const bool negate = p.antithetic && (index & 1);
    RandomStream brownian(stream_seed(p.seed, key, 1));
    RandomStream jumps(stream_seed(p.seed, key, 2));
    RandomStream observations(stream_seed(p.seed, key, 3));

    const bool has_bm = p.nu > 0.0;
    double t = 0.0;
    double x = p.x0;
    double next_jump = p.alpha > 0.0 ? jumps.exponential(p.alpha) : kInf;
    double next_obs = observations.exponential(p.lambda);
    std::uint64_t grid_index = 1;
    double next_grid = p.dt;

    while (true) {
        double t_next = next_grid;
        if (next_jump < t_next) t_next = next_jump;
        if (next_obs < t_next) t_next = next_obs;
        bool at_horizon = false;
        if (p.horizon < t_next) {
            t_next = p.horizon;
            at_horizon = true;
        }
        const double delta = t_next - t;
        if (delta > 0.0) {
            x -= p.mu * delta;
            if (has_bm) {
                double zn = brownian.normal();
                if (negate) zn = -zn;
                x += p.nu * std::sqrt(delta) * zn;
            }
        }
        t = t_next;

        // Priority at a shared time point: the continuous down-crossing of
        // player C happens first almost surely; then upper killing; then
        // player P's observation.
        if (x < p.a)
            return {std::exp(-p.q * t) * p.reward_c->value(x), 0.0, false};
        if (x > p.b) return {0.0, 0.0, false};
        if (t == next_jump) {
            x += jumps.exponential(p.beta);
            next_jump = t + jumps.exponential(p.alpha);
            if (x > p.b) return {0.0, 0.0, false};
        }
        if (t == next_obs) {
            if (x < p.l)
                return {0.0, std::exp(-p.q * t) * p.reward_p->value(x),
                        false};
            next_obs = t + observations.exponential(p.lambda);
        }
        if (at_horizon) return {0.0, 0.0, true};
        if (t == next_grid) {
            ++grid_index;
            next_grid = static_cast<double>(grid_index) * p.dt;
        }
    }
}

std::pair<Estimate, Estimate> run_simulation(const GameSpec& spec, double x,
                                             double a, double l, double b,
                                             const SimConfig& cfg) {
    cfg.validate(spec.q());
    PathProblem problem{spec.model().mu(),   spec.model().nu(),
                        spec.model().alpha(), spec.model().beta(),
                        spec.lambda(),        spec.q(),
                        x,                    a,
                        l,                    b,
                        cfg.dt,               cfg.horizon,
                        cfg.seed,             cfg.antithetic,
                        &spec.reward_c(),     &spec.reward_p()};

    const std::uint64_t n = cfg.paths;
    std::vector<double> pc(n), pp(n);
    std::vector<unsigned char> trunc(n);

    unsigned workers = cfg.threads ? cfg.threads
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));
    const auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            const PathResult r = simulate_path(problem, i);
            pc[i] = r.payoff_c;
            pp[i] = r.payoff_p;
            trunc[i] = r.truncated ? 1 : 0;
        }
    };
    if (workers <= 1) {
        run_range(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t lo = w * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // Reduction in path order: bit-identical at any worker count.
    const auto reduce = [&](const std::vector<double>& v) {
        Estimate e;
        e.n = n;
        double sum = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) sum += v[i];
        e.mean = sum / static_cast<double>(n);
        double ss = 0.0;
        if (cfg.antithetic) {
            const std::uint64_t pairs = n / 2;
            for (std::uint64_t k = 0; k < pairs; ++k) {
                const double avg = 0.5 * (v[2 * k] + v[2 * k + 1]);
                ss += (avg - e.mean) * (avg - e.mean);
            }
            e.std_error = pairs > 1 ? std::sqrt(ss / (pairs - 1) /
                                                static_cast<double>(pairs))
                                    : 0.0;
        } else {
            for (std::uint64_t i = 0; i < n; ++i)
                ss += (v[i] - e.mean) * (v[i] - e.mean);
            e.std_error =
                n > 1 ? std::sqrt(ss / (n - 1) / static_cast<double>(n)) : 0.0;
        }
        double tcount = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) tcount += trunc[i];
        e.truncated_fraction = tcount / static_cast<double>(n);
        return e;
    };
    return {reduce(pc), reduce(pp)};
}

} // namespace

void SimConfig::validate(double q) const {
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
    if (!(horizon > 0.0))
        throw std::invalid_argument("SimConfig: horizon must be > 0");
    if (paths == 0) throw std::invalid_argument("SimConfig: paths must be > 0");
    if (!(q * horizon >= 9.0))
        throw std::invalid_argument(
            "SimConfig: q * horizon >= 9 required to bound truncation bias");
    if (antithetic && (paths % 2) != 0)
        throw std::invalid_argument(
            "SimConfig: antithetic sampling needs an even path count");
}

std::pair<Estimate, Estimate> simulate_game(const GameSpec& spec, double x,
                                            double a, double l,
                                            const SimConfig& cfg) {
    if (!(a <= l)) throw std::domain_error("simulate_game: need a <= l");
    return run_simulation(spec, x, a, l, kInf, cfg);
}

std::pair<Estimate, Estimate> simulate_game_two_sided(const GameSpec& spec,
                                                      double x, double a,
                                                      double l, double b,
                                                      const SimConfig& cfg) {
    if (!(a <= l && l <= b))
        throw std::domain_error("simulate_game_two_sided: need a <= l <= b");
    return run_simulation(spec, x, a, l, b, cfg);
}

BestResponseScan empirical_best_response_scan(const GameSpec& spec,
                                              const Equilibrium& eq, double x,
                                              int grid_size,
                                              const SimConfig& cfg) {
    if (grid_size < 1)
        throw std::invalid_argument("empirical_best_response_scan: grid_size "
                                    "must be >= 1");
    BestResponseScan scan;
    scan.analytic_v_c = v_c(spec, x, eq.a_star, eq.l_star);
    scan.analytic_v_p = v_p(spec, x, eq.a_star, eq.l_star);

    const double a_lo = spec.x_under_c();
    const double a_hi = std::min(spec.x_bar_c(), eq.l_star) - 1e-6;
    for (int i = 0; i < grid_size; ++i) {
        const double a =
            grid_size == 1
                ? eq.a_star
                : a_lo + (a_hi - a_lo) * i / (grid_size - 1);
        scan.c_scan.push_back(
            {a, simulate_game(spec, x, a, eq.l_star, cfg).first});
    }
    const double l_lo = eq.a_star + 1e-6;
    const double l_hi = spec.x_bar_p();
    for (int i = 0; i < grid_size; ++i) {
        const double l =
            grid_size == 1
                ? eq.l_star
                : l_lo + (l_hi - l_lo) * i / (grid_size - 1);
        scan.p_scan.push_back(
            {l, simulate_game(spec, x, eq.a_star, l, cfg).second});
    }

    const auto consistent = [](const std::vector<ScanPoint>& points,
                               double analytic) {
        double best = -kInf, best_se = 0.0;
        for (const auto& pt : points)
            if (pt.estimate.mean > best) {
                best = pt.estimate.mean;
                best_se = pt.estimate.std_error;
            }
        return best - analytic <= 3.0 * best_se;
    };
    scan.c_consistent = consistent(scan.c_scan, scan.analytic_v_c);
    scan.p_consistent = consistent(scan.p_scan, scan.analytic_v_p);
    return scan;
}

} // namespace levygame
