#include "vfstab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "vfstab/csv.hpp"
#include "vfstab/errors.hpp"

namespace vfstab {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view v) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || std::isnan(x)) {
        throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
    }
    return x;
}

template <class Int>
Int parse_int(std::string_view v) {
    Int x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
    }
    return x;
}

struct Field {
    std::string key;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;  // empty: not echoed
};

template <class Ref>
Field number(std::string key, Ref ref) {
    return {std::move(key), [ref](RunConfig& c, std::string_view v) { ref(c) = parse_double(v); },
            [ref](const RunConfig& c) { return format_number(ref(c)); }};
}

template <class Ref>
Field integer(std::string key, Ref ref) {
    return {std::move(key),
            [ref](RunConfig& c, std::string_view v) {
                auto& slot = ref(c);
                slot = parse_int<std::remove_reference_t<decltype(slot)>>(v);
            },
            [ref](const RunConfig& c) { return std::to_string(ref(c)); }};
}

template <class Enum>
struct Choice {
    const char* name;
    Enum value;
};

template <class Enum, std::size_t N, class Ref>
Field choice(std::string key, const Choice<Enum> (&options)[N], Ref ref) {
    std::vector<Choice<Enum>> opts(options, options + N);
    return {std::move(key),
            [opts, ref](RunConfig& c, std::string_view v) {
                std::string allowed;
                for (const auto& o : opts) {
                    if (v == o.name) {
                        ref(c) = o.value;
                        return;
                    }
                    allowed += (allowed.empty() ? "" : "|") + std::string(o.name);
                }
                throw std::invalid_argument("expected one of " + allowed + ", got '" + std::string(v) + "'");
            },
            [opts, ref](const RunConfig& c) {
                for (const auto& o : opts) {
                    if (ref(c) == o.value) return std::string(o.name);
                }
                return std::string("?");
            }};
}

constexpr Choice<ReferenceSide> kReferenceSides[] = {{"link", ReferenceSide::kLinkSide},
                                                     {"motor", ReferenceSide::kMotorSide}};
constexpr Choice<VelocityProfile::Family> kFamilies[] = {{"trapezoid", VelocityProfile::Family::kTrapezoid},
                                                         {"minimum_jerk", VelocityProfile::Family::kMinimumJerk},
                                                         {"constant", VelocityProfile::Family::kConstant}};
constexpr Choice<SearchMode> kModes[] = {{"ray", SearchMode::kRay}, {"grid", SearchMode::kGrid}};
constexpr Choice<bool> kBools[] = {{"false", false}, {"true", true}, {"0", false}, {"1", true}};

#define REF(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(number("plant.J_l", REF(plant.J_l)));
        f.push_back(number("plant.K_el", REF(plant.K_el)));
        f.push_back(number("plant.D_el", REF(plant.D_el)));
        f.push_back(number("plant.n", REF(plant.n)));
        f.push_back(number("plant.J_m", REF(plant.J_m)));
        f.push_back(number("plant.D_m", REF(plant.D_m)));
        f.push_back(number("plant.K_h", REF(plant.K_h)));
        f.push_back(number("plant.b_h", REF(plant.b_h)));
        f.push_back(number("plant.K_P", REF(plant.K_P)));
        f.push_back(number("plant.K_D", REF(plant.K_D)));
        f.push_back(number("plant.t0", REF(plant.t0)));
        f.push_back(number("plant.v_max", REF(plant.v_max)));
        f.push_back(choice("plant.reference", kReferenceSides, REF(plant.reference)));

        f.push_back(number("adm.m", REF(adm.m)));
        f.push_back(number("adm.b", REF(adm.b)));

        f.push_back(choice("adapt.enabled", kBools, REF(adaptive)));
        f.push_back(number("adapt.m_star", REF(center.m_star)));
        f.push_back(number("adapt.b_star", REF(center.b_star)));
        f.push_back(number("adapt.v0", REF(center.v0)));
        f.push_back(number("adapt.spread", REF(center.spread)));

        f.push_back(number("sim.dt", REF(dt)));
        f.push_back(number("sim.T", REF(T)));
        f.push_back(number("sim.v_init", REF(v_init)));
        f.push_back(number("sim.force_noise", REF(force_noise)));
        f.push_back(integer("sim.seed", REF(seed)));
        f.push_back(choice("sim.vd.family", kFamilies, REF(vd.family)));
        f.push_back(number("sim.vd.peak", REF(vd.peak)));
        f.push_back(number("sim.vd.start", REF(vd.start)));
        f.push_back(number("sim.vd.ramp", REF(vd.ramp)));
        f.push_back(number("sim.vd.hold", REF(vd.hold)));
        f.push_back(number("sim.vd.duration", REF(vd.duration)));

        f.push_back(number("analysis.omega_lo", REF(search.omega_lo)));
        f.push_back(number("analysis.omega_hi", REF(search.omega_hi)));
        f.push_back(integer("analysis.grid_points", REF(search.grid_points)));
        f.push_back(number("analysis.f_min", REF(detection.f_min)));
        f.push_back(number("analysis.keep_fraction", REF(detection.keep_fraction)));
        f.push_back(number("analysis.threshold", REF(detection.threshold)));
        f.push_back(number("analysis.relative_threshold", REF(detection.relative_threshold)));

        f.push_back(number("sweep.m_lo", REF(sweep.m_lo)));
        f.push_back(number("sweep.m_hi", REF(sweep.m_hi)));
        f.push_back(integer("sweep.m_count", REF(sweep.m_count)));
        f.push_back(number("sweep.b_lo", REF(sweep.b_lo)));
        f.push_back(number("sweep.b_hi", REF(sweep.b_hi)));
        f.push_back(integer("sweep.b_count", REF(sweep.b_count)));

        f.push_back(number("sensitivity.span", REF(sensitivity.span)));
        f.push_back(integer("sensitivity.points", REF(sensitivity.points)));

        f.push_back(choice("optimize.mode", kModes, REF(optimize.mode)));
        f.push_back(number("optimize.alpha_lo", REF(optimize.alpha_lo)));
        f.push_back(number("optimize.alpha_hi", REF(optimize.alpha_hi)));
        f.push_back(number("optimize.alpha_tol", REF(optimize.alpha_tol)));
        f.push_back(integer("optimize.grid_points", REF(optimize.grid_points)));
        f.push_back(number("optimize.spread", REF(optimize.spread)));
        f.push_back(number("optimize.warn_fraction", REF(optimize.warn_fraction)));

        f.push_back({"output.dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(v); }, {}});
        return f;
    }();
    return table;
}

#undef REF

void assign(RunConfig& cfg, std::string_view key, std::string_view value, int line) {
    for (const Field& f : fields()) {
        if (f.key == key) {
            try {
                f.set(cfg, value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(f.key + ": " + e.what(), f.key, line);
            }
            return;
        }
    }
    throw ConfigError("unknown key '" + std::string(key) + "'", std::string(key), line);
}

void require(bool ok, const char* key, const char* what) {
    if (!ok) {
        throw ConfigError(std::string(key) + " " + what, key);
    }
}

}  // namespace

void RunConfig::validate() const {
    try {
        plant.validate();
        adm.validate();
        vd.validate();
        if (adaptive) center.validate();
        sim_config().validate();
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        throw ConfigError(msg, msg.substr(0, msg.find(' ')));
    }
    require(search.omega_lo > 0.0 && search.omega_hi > search.omega_lo, "analysis.omega_hi",
            "must exceed analysis.omega_lo > 0");
    require(search.grid_points >= 2, "analysis.grid_points", "must be at least 2");
    require(detection.f_min >= 0.0, "analysis.f_min", "must be non-negative");
    require(detection.keep_fraction > 0.0 && detection.keep_fraction <= 1.0, "analysis.keep_fraction",
            "must lie in (0, 1]");
    require(detection.relative_threshold > 0.0, "analysis.relative_threshold", "must be strictly positive");
    require(sweep.m_lo > 0.0 && sweep.m_hi >= sweep.m_lo, "sweep.m_hi", "must be >= sweep.m_lo > 0");
    require(sweep.b_lo > 0.0 && sweep.b_hi >= sweep.b_lo, "sweep.b_hi", "must be >= sweep.b_lo > 0");
    require(sweep.m_count >= 1, "sweep.m_count", "must be at least 1");
    require(sweep.b_count >= 1, "sweep.b_count", "must be at least 1");
    require(sensitivity.span > 0.0 && sensitivity.span < 1.0, "sensitivity.span", "must lie in (0, 1)");
    require(sensitivity.points >= 3 && sensitivity.points % 2 == 1, "sensitivity.points", "must be odd and >= 3");
    require(optimize.alpha_lo > 0.0 && optimize.alpha_hi > optimize.alpha_lo, "optimize.alpha_hi",
            "must exceed optimize.alpha_lo > 0");
    require(optimize.alpha_tol > 0.0, "optimize.alpha_tol", "must be strictly positive");
    require(optimize.grid_points >= 2, "optimize.grid_points", "must be at least 2");
    require(optimize.spread >= 0.0 && optimize.spread < 1.0, "optimize.spread", "must lie in [0, 1)");
    require(optimize.warn_fraction > 0.0, "optimize.warn_fraction", "must be strictly positive");
}

SimConfig RunConfig::sim_config() const {
    SimConfig s;
    s.dt = dt;
    s.T = T;
    s.vd = vd;
    s.plant = plant;
    if (adaptive) {
        s.admittance = center;
    } else {
        s.admittance = adm;
    }
    s.v_init = v_init;
    s.force_noise = force_noise;
    s.seed = seed;
    return s;
}

void parse_config(std::string_view text, RunConfig& cfg) {
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected 'key = value'", "", line_no);
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("empty key or value", std::string(key), line_no);
        }
        assign(cfg, key, value, line_no);
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'", "--config");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    RunConfig cfg;
    parse_config(ss.str(), cfg);
    return cfg;
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "' is not key=value", "--set");
    }
    assign(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), 0);
}

std::string resolved_config_text(const RunConfig& cfg) {
    std::string out;
    std::string section;
    for (const Field& f : fields()) {
        if (!f.get) continue;
        const std::string sec = f.key.substr(0, f.key.find('.'));
        if (!section.empty() && sec != section) out += '\n';
        section = sec;
        out += f.key + " = " + f.get(cfg) + '\n';
    }
    return out;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const Field& f : fields()) keys.push_back(f.key);
    return keys;
}

}  // namespace vfstab
