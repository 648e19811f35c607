#include "piep/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "piep/errors.hpp"

namespace piep {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

constexpr std::array kKnownKeys = {
    "g2",        "gamma",     "kappa2_out", "kappa2_in",        "beta",
    "kappa_phase", "period",  "delta_z",    "z_first",          "z_total",
    "sample_dz", "initial",   "u1",         "u1_im",            "u2",
    "u2_im",     "a1",        "a1_im",      "a2",               "a2_im",
    "ep_tol",    "rk4_h",     "g_c",        "alpha",            "dz_points",
    "dz_max",    "period_ratio_min", "period_ratio_max", "period_ratio_points",
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

const char* form_name(InitialForm f) {
    switch (f) {
        case InitialForm::waveguides: return "waveguides";
        case InitialForm::eigen: return "eigen";
        case InitialForm::equal_mix: return "equal_mix";
    }
    return "waveguides";
}

class Reader {
public:
    Reader(std::map<std::string, Entry> entries, RunConfig& out) : entries_(std::move(entries)), out_(out) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

    [[noreturn]] void fail(const std::string& key, const std::string& why) const {
        const int ln = line(key);
        std::string where = ln > 0 ? " (line " + std::to_string(ln) + ")" : "";
        throw ConfigError("config key '" + key + "'" + where + ": " + why, key, ln);
    }

    double required(const std::string& key) {
        if (!has(key)) fail(key, "missing required key");
        return parse_double(key);
    }

    template <class Fn>
    double optional(const std::string& key, Fn&& fallback) {
        if (has(key)) return parse_double(key);
        out_.defaulted.push_back(key);
        return fallback();
    }

    template <class Fn>
    std::size_t optional_count(const std::string& key, Fn&& fallback) {
        if (!has(key)) {
            out_.defaulted.push_back(key);
            return fallback();
        }
        const std::string& text = entries_.at(key).value;
        std::size_t v = 0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) fail(key, "expected a positive integer");
        return v;
    }

    std::string text(const std::string& key) const { return entries_.at(key).value; }

private:
    double parse_double(const std::string& key) const {
        const std::string& text = entries_.at(key).value;
        double v = 0.0;
        const char* begin = text.data();
        if (!text.empty() && text.front() == '+') ++begin;
        const auto res = std::from_chars(begin, text.data() + text.size(), v);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
            fail(key, "expected a finite number, got '" + text + "'");
        return v;
    }

    std::map<std::string, Entry> entries_;
    RunConfig& out_;
};

std::map<std::string, Entry> tokenize(std::string_view text) {
    std::map<std::string, Entry> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", "", line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key", "", line_no);
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError("unknown config key '" + key + "' (line " + std::to_string(line_no) + ")", key, line_no);
        if (value.empty())
            throw ConfigError("config key '" + key + "' (line " + std::to_string(line_no) + "): empty value", key,
                              line_no);
        if (entries.count(key))
            throw ConfigError("config key '" + key + "' (line " + std::to_string(line_no) + "): duplicate key", key,
                              line_no);
        entries.emplace(key, Entry{value, line_no});
    }
    return entries;
}

bool is_sweep(Command c) { return c == Command::sweep_dz || c == Command::sweep_grid; }

}  // namespace

SystemParams base_params(const Settings& s) {
    SystemParams p;
    p.beta = s.beta;
    p.gamma = s.gamma;
    p.g = std::sqrt(s.g2);
    p.kappa = kappa_out(s);
    return p;
}

Complex kappa_out(const Settings& s) { return std::polar(std::sqrt(s.kappa2_out * s.g2), s.kappa_phase); }
Complex kappa_in(const Settings& s) { return std::polar(std::sqrt(s.kappa2_in * s.g2), s.kappa_phase); }

namespace {

InitialState initial_of(const Settings& s) {
    switch (s.initial) {
        case InitialForm::waveguides: return State{s.init1, s.init2};
        case InitialForm::eigen: return EigenCoefficients{s.init1, s.init2};
        case InitialForm::equal_mix: return unit_energy_equal_mix(base_params(s), s.ep_tol);
    }
    return State{s.init1, s.init2};
}

}  // namespace

RunConfig parse_config(std::string_view text, Command command) {
    RunConfig out;
    Reader in(tokenize(text), out);
    Settings& s = out.settings;

    s.g2 = in.required("g2");
    s.gamma = in.required("gamma");
    s.kappa2_out = in.required("kappa2_out");
    s.kappa2_in = in.required("kappa2_in");
    if (!(s.g2 > 0.0)) in.fail("g2", "must be > 0");
    if (s.kappa2_out < 0.0) in.fail("kappa2_out", "must be >= 0");
    if (s.kappa2_in < 0.0) in.fail("kappa2_in", "must be >= 0");
    if (s.kappa2_in <= 1.0)
        out.warnings.push_back("kappa2_in <= 1: window spectrum is at or beyond the exceptional point");
    if (s.kappa2_out <= 1.0)
        out.warnings.push_back("kappa2_out <= 1: base spectrum is at or beyond the exceptional point");

    s.beta = in.optional("beta", [] { return 0.0; });
    s.kappa_phase = in.optional("kappa_phase", [] { return 0.0; });
    s.ep_tol = in.optional("ep_tol", [] { return kDefaultEpTol; });
    if (!(s.ep_tol > 0.0)) in.fail("ep_tol", "must be > 0");

    // Initial state: exactly one form.
    const bool any_u = in.has("u1") || in.has("u1_im") || in.has("u2") || in.has("u2_im");
    const bool any_a = in.has("a1") || in.has("a1_im") || in.has("a2") || in.has("a2_im");
    if (any_u && any_a) in.fail(in.has("a1") ? "a1" : "a2", "waveguide (u*) and eigen (a*) initial states both given");
    if (in.has("initial")) {
        const std::string form = in.text("initial");
        if (form == "waveguides")
            s.initial = InitialForm::waveguides;
        else if (form == "eigen")
            s.initial = InitialForm::eigen;
        else if (form == "equal_mix")
            s.initial = InitialForm::equal_mix;
        else
            in.fail("initial", "expected waveguides, eigen or equal_mix");
    } else {
        out.defaulted.push_back("initial");
        s.initial = any_u ? InitialForm::waveguides
                    : any_a ? InitialForm::eigen
                    : is_sweep(command) ? InitialForm::equal_mix
                                        : InitialForm::waveguides;
    }
    if ((s.initial == InitialForm::waveguides && any_a) || (s.initial == InitialForm::eigen && any_u) ||
        (s.initial == InitialForm::equal_mix && (any_a || any_u)))
        in.fail("initial", std::string("conflicts with the amplitude keys given for form ") + form_name(s.initial));
    if (s.initial != InitialForm::equal_mix) {
        const std::string p = s.initial == InitialForm::waveguides ? "u" : "a";
        const double r1 = in.optional(p + "1", [] { return 1.0; });
        const double i1 = in.optional(p + "1_im", [] { return 0.0; });
        const double r2 = in.optional(p + "2", [] { return 1.0; });
        const double i2 = in.optional(p + "2_im", [] { return 0.0; });
        s.init1 = Complex{r1, i1};
        s.init2 = Complex{r2, i2};
        if (s.init1 == Complex{} && s.init2 == Complex{}) in.fail(p + "1", "initial state is zero");
    }

    // Schedule; defaults are in units of the optimal period.
    const SystemParams base = base_params(s);
    double delta = 0.0;
    bool have_delta = false;
    try {
        delta = optimal_period(base, s.ep_tol);
        have_delta = true;
    } catch (const ExceptionalPointError&) {
    }
    const bool needs_schedule = command != Command::spectrum && command != Command::ep;
    if (!in.has("period") && !have_delta) {
        if (needs_schedule) in.fail("period", "no default: kappa2_out <= 1 has no oscillation period");
        for (const char* k : {"delta_z", "z_first", "z_total", "sample_dz", "rk4_h", "dz_max"})
            if (in.has(k)) in.fail("period", "required when schedule keys are given and kappa2_out <= 1");
    } else {
        s.has_schedule = true;
        s.period = in.optional("period", [&] { return delta; });
        if (!(s.period > 0.0)) in.fail("period", "must be > 0");
        s.delta_z = in.optional("delta_z", [&] { return s.period / 50.0; });
        if (!(s.delta_z > 0.0)) in.fail("delta_z", "must be > 0");
        if (!(s.delta_z < s.period)) in.fail("delta_z", "must be < period");
        const double n_periods = command == Command::sweep_grid ? 20.0 : 10.0;
        s.z_total = in.optional("z_total", [&] { return n_periods * s.period; });
        if (!(s.z_total >= s.period)) in.fail("z_total", "must be >= period");
        s.sample_dz = in.optional("sample_dz", [&] { return s.period / 200.0; });
        if (!(s.sample_dz > 0.0)) in.fail("sample_dz", "must be > 0");
        s.z_first = in.optional("z_first", [&] {
            ScenarioConfig probe;
            probe.params = base;
            probe.schedule.kappa_base = base.kappa;
            probe.initial = initial_of(s);
            probe.ep_tol = s.ep_tol;
            return phase_aligned_start(base, initial_amplitudes(probe), s.ep_tol);
        });
        if (!(s.z_first >= 0.0)) in.fail("z_first", "must be >= 0");
        s.rk4_h = in.optional("rk4_h", [&] { return s.period / 4096.0; });
        if (!(s.rk4_h > 0.0)) in.fail("rk4_h", "must be > 0");
    }

    s.g_c = in.optional("g_c", [&] { return std::sqrt(s.g2); });
    if (s.g_c < 0.0) in.fail("g_c", "must be >= 0");
    s.alpha = in.optional("alpha", [] { return kRefAlpha; });
    if (s.alpha < 0.0) in.fail("alpha", "must be >= 0");

    s.dz_points = in.optional_count("dz_points", [] { return std::size_t{200}; });
    if (s.dz_points < 1) in.fail("dz_points", "must be >= 1");
    s.period_ratio_min = in.optional("period_ratio_min", [] { return 0.5; });
    s.period_ratio_max = in.optional("period_ratio_max", [] { return 1.5; });
    if (!(s.period_ratio_min > 0.0)) in.fail("period_ratio_min", "must be > 0");
    if (!(s.period_ratio_max >= s.period_ratio_min)) in.fail("period_ratio_max", "must be >= period_ratio_min");
    s.period_ratio_points = in.optional_count("period_ratio_points", [] { return std::size_t{101}; });
    if (s.period_ratio_points < 1) in.fail("period_ratio_points", "must be >= 1");
    if (s.has_schedule) {
        s.dz_max = in.optional("dz_max", [&] { return s.period_ratio_min * s.period / 2.0; });
        if (!(s.dz_max > 0.0)) in.fail("dz_max", "must be > 0");
        if (s.dz_max > s.period_ratio_min * s.period / 2.0)
            in.fail("dz_max", "must be <= period_ratio_min * period / 2");
    }
    return out;
}

std::string serialize_config(const RunConfig& cfg) {
    const Settings& s = cfg.settings;
    std::ostringstream os;
    auto put = [&](const char* key, double v) { os << key << " = " << format_double(v) << '\n'; };
    put("g2", s.g2);
    put("gamma", s.gamma);
    put("kappa2_out", s.kappa2_out);
    put("kappa2_in", s.kappa2_in);
    put("beta", s.beta);
    put("kappa_phase", s.kappa_phase);
    put("ep_tol", s.ep_tol);
    os << "initial = " << form_name(s.initial) << '\n';
    if (s.initial != InitialForm::equal_mix) {
        const char* names[2][2] = {{"u1", "u1_im"}, {"u2", "u2_im"}};
        const char* eig[2][2] = {{"a1", "a1_im"}, {"a2", "a2_im"}};
        const auto& n = s.initial == InitialForm::waveguides ? names : eig;
        put(n[0][0], s.init1.real());
        put(n[0][1], s.init1.imag());
        put(n[1][0], s.init2.real());
        put(n[1][1], s.init2.imag());
    }
    if (s.has_schedule) {
        put("period", s.period);
        put("delta_z", s.delta_z);
        put("z_first", s.z_first);
        put("z_total", s.z_total);
        put("sample_dz", s.sample_dz);
        put("rk4_h", s.rk4_h);
        put("dz_max", s.dz_max);
    }
    put("g_c", s.g_c);
    put("alpha", s.alpha);
    os << "dz_points = " << s.dz_points << '\n';
    put("period_ratio_min", s.period_ratio_min);
    put("period_ratio_max", s.period_ratio_max);
    os << "period_ratio_points = " << s.period_ratio_points << '\n';
    return os.str();
}

ScenarioConfig to_scenario(const Settings& s, bool nonlinear) {
    if (!s.has_schedule) throw InvalidParameterError("configuration has no coupling schedule");
    ScenarioConfig cfg;
    cfg.params = base_params(s);
    cfg.schedule.kappa_base = kappa_out(s);
    cfg.schedule.kappa_pert = kappa_in(s);
    cfg.schedule.delta_z = s.delta_z;
    cfg.schedule.period = s.period;
    cfg.schedule.z_first = s.z_first;
    cfg.schedule.z_total = s.z_total;
    cfg.initial = initial_of(s);
    cfg.sample_dz = s.sample_dz;
    cfg.ep_tol = s.ep_tol;
    cfg.rk4_h = s.rk4_h;
    if (nonlinear) cfg.nonlinear = NonlinearParams{s.g_c, s.alpha};
    return cfg;
}

std::vector<double> dz_grid(const Settings& s) { return uniform_grid(s.dz_max, s.dz_points); }

std::vector<double> period_ratio_grid(const Settings& s) {
    return linspace(s.period_ratio_min, s.period_ratio_max, s.period_ratio_points);
}

}  // namespace piep
