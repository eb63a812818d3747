#include "levygame/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

namespace levygame {

namespace {

struct FieldDef {
    const char* section;
    const char* key;
    std::function<void(RunConfig&, const std::string&)> set;
};

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("trailing junk in number: '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a nonnegative integer: '" + s + "'");
    }
    if (used != s.size())
        throw ConfigError("trailing junk in integer: '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("not a boolean (true/false/1/0): '" + s + "'");
}

const std::vector<FieldDef>& fields() {
    static const std::vector<FieldDef> defs = {
        {"model", "mu", [](RunConfig& c, const std::string& v) { c.mu = parse_double(v); }},
        {"model", "nu", [](RunConfig& c, const std::string& v) { c.nu = parse_double(v); }},
        {"model", "alpha", [](RunConfig& c, const std::string& v) { c.alpha = parse_double(v); }},
        {"model", "beta", [](RunConfig& c, const std::string& v) { c.beta = parse_double(v); }},
        {"game", "q", [](RunConfig& c, const std::string& v) { c.q = parse_double(v); }},
        {"game", "lambda", [](RunConfig& c, const std::string& v) { c.lambda = parse_double(v); }},
        {"game", "k_c", [](RunConfig& c, const std::string& v) { c.k_c = parse_double(v); }},
        {"game", "k_p", [](RunConfig& c, const std::string& v) { c.k_p = parse_double(v); }},
        {"solver", "scan_points",
         [](RunConfig& c, const std::string& v) {
             c.scan_points = static_cast<int>(parse_u64(v));
         }},
        {"solver", "root_tol", [](RunConfig& c, const std::string& v) { c.root_tol = parse_double(v); }},
        {"solver", "voi_gap_tol",
         [](RunConfig& c, const std::string& v) { c.voi_gap_tol = parse_double(v); }},
        {"mc", "dt", [](RunConfig& c, const std::string& v) { c.dt = parse_double(v); }},
        {"mc", "horizon", [](RunConfig& c, const std::string& v) { c.horizon = parse_double(v); }},
        {"mc", "paths", [](RunConfig& c, const std::string& v) { c.paths = parse_u64(v); }},
        {"mc", "seed", [](RunConfig& c, const std::string& v) { c.seed = parse_u64(v); }},
        {"mc", "antithetic",
         [](RunConfig& c, const std::string& v) { c.antithetic = parse_bool(v); }},
        {"mc", "threads",
         [](RunConfig& c, const std::string& v) {
             c.threads = static_cast<unsigned>(parse_u64(v));
         }},
        {"output", "dir", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
        {"output", "format",
         [](RunConfig& c, const std::string& v) {
             if (v != "csv" && v != "json")
                 throw ConfigError("format must be csv or json, got '" + v + "'");
             c.format = v;
         }},
    };
    return defs;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

} // namespace

RunConfig RunConfig::load(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            const bool known = std::any_of(
                fields().begin(), fields().end(),
                [&](const FieldDef& f) { return section == f.section; });
            if (!known)
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = std::find_if(
            fields().begin(), fields().end(), [&](const FieldDef& f) {
                return section == f.section && key == f.key;
            });
        if (it == fields().end())
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "' in section [" +
                              section + "]");
        try {
            it->set(cfg, value);
        } catch (const ConfigError& ex) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " +
                              ex.what());
        }
    }
    return cfg;
}

void RunConfig::apply_env() {
    for (const auto& f : fields()) {
        const std::string name =
            "LEVYGAME_" + upper(f.section) + "_" + upper(f.key);
        if (const char* value = std::getenv(name.c_str())) {
            try {
                f.set(*this, value);
            } catch (const ConfigError& ex) {
                throw ConfigError(name + ": " + ex.what());
            }
        }
    }
}

void RunConfig::validate() const {
    make_spec();                     // model + game invariants
    make_sim_config().validate(q);   // mc invariants
    if (scan_points < 2) throw ConfigError("solver.scan_points must be >= 2");
    if (!(root_tol > 0.0)) throw ConfigError("solver.root_tol must be > 0");
    if (!(voi_gap_tol > 0.0))
        throw ConfigError("solver.voi_gap_tol must be > 0");
}

LevyModel RunConfig::make_model() const {
    try {
        return LevyModel(mu, nu, alpha, beta);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("model: ") + ex.what());
    }
}

GameSpec RunConfig::make_spec() const { return make_spec_with(lambda, k_c); }

GameSpec RunConfig::make_spec_with(double lambda_override,
                                   double k_c_override) const {
    try {
        return GameSpec(make_model(), q, lambda_override,
                        GameRewards(std::make_shared<PutReward>(k_c_override),
                                    std::make_shared<PutReward>(k_p)));
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("game: ") + ex.what());
    }
}

SimConfig RunConfig::make_sim_config() const {
    SimConfig sim;
    sim.dt = dt;
    sim.horizon = horizon;
    sim.paths = paths;
    sim.seed = seed;
    sim.antithetic = antithetic;
    sim.threads = threads;
    return sim;
}

SolverOptions RunConfig::make_solver_options() const {
    SolverOptions opt;
    opt.scan_points = scan_points;
    opt.root_tol = root_tol;
    return opt;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        os << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_double(row[i]);
        }
        os << '\n';
    }
    return os.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << csv_to_string(header, rows);
}

} // namespace levygame
