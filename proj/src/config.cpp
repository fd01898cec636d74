#include "qar/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qar/errors.hpp"

namespace qar {

std::string to_string(SolverKind k)
{
    switch (k) {
        case SolverKind::QubitZZ: return "qubit_zz";
        case SolverKind::QubitLocal: return "qubit_local";
        case SolverKind::QubitGlobal: return "qubit_global";
        case SolverKind::ResonatorMe: return "resonator_me";
        case SolverKind::Negf: return "negf";
    }
    return "?";
}

namespace {

SolverKind solver_from(const std::string& s)
{
    for (auto k : {SolverKind::QubitZZ, SolverKind::QubitLocal, SolverKind::QubitGlobal, SolverKind::ResonatorMe,
                   SolverKind::Negf})
        if (to_string(k) == s) return k;
    throw ConfigError("unknown solver '" + s + "'");
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

template <class T>
T get(const YAML::Node& node, const std::string& key, const std::string& where)
{
    const YAML::Node v = node[key];
    if (!v) throw ConfigError(where + ": missing '" + key + "'");
    try {
        return v.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(where + ": bad value for '" + key + "'");
    }
}

template <class T>
T get_or(const YAML::Node& node, const std::string& key, T fallback, const std::string& where)
{
    if (!node[key]) return fallback;
    return get<T>(node, key, where);
}

void check_keys(const YAML::Node& node, const std::vector<std::string>& allowed, const std::string& where)
{
    if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

BathTemplate parse_bath(const YAML::Node& node, const std::string& where)
{
    check_keys(node, {"coupling", "resonance", "cutoff"}, where);
    BathTemplate b;
    b.coupling = get<double>(node, "coupling", where);
    b.cutoff = get<double>(node, "cutoff", where);
    b.resonance = ParamExpr::parse(get<std::string>(node, "resonance", where));
    return b;
}

bool is_integer_param(const std::string& p) { return p == "n1" || p == "n2"; }

bool is_qubit(SolverKind k)
{
    return k == SolverKind::QubitZZ || k == SolverKind::QubitLocal || k == SolverKind::QubitGlobal;
}

bool applies(const std::string& param, SolverKind k)
{
    if (param == "delta_x") return k == SolverKind::QubitLocal || k == SolverKind::QubitGlobal;
    if (is_integer_param(param)) return k == SolverKind::ResonatorMe;
    return true;
}

void check_point(const Point& p, SolverKind k, const std::string& where)
{
    if (!(p.temperature > 0.0)) throw ConfigError(where + ": T must be > 0");
    if (!(p.delta_t >= 0.0)) throw ConfigError(where + ": delta_T must be >= 0");
    if (!(p.delta_z >= 0.0)) throw ConfigError(where + ": delta_z must be >= 0");
    if (!(p.eps2 > 0.0)) throw ConfigError(where + ": eps2 must be > 0");
    if (!(p.gamma_l > 0.0)) throw ConfigError(where + ": gamma_L must be > 0");
    if (!is_qubit(k) && !(p.eps1 > 0.0)) throw ConfigError(where + ": eps1 must be > 0 for " + to_string(k));
    if (k == SolverKind::QubitZZ && p.delta_x != 0.0) throw ConfigError(where + ": qubit_zz requires delta_x = 0");
    if (k == SolverKind::ResonatorMe) {
        for (double n : {p.n1, p.n2})
            if (n < 2.0 || n != std::floor(n)) throw ConfigError(where + ": n1, n2 must be integers >= 2");
    }
}

} // namespace

ParamExpr ParamExpr::parse(const std::string& text)
{
    ParamExpr e;
    e.text_ = trim(text);
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ConfigError("empty expression");

    // Split into signed terms, keeping exponents like 1e-3 intact.
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        const bool exp_sign = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E') && i > 1
            && std::isdigit(static_cast<unsigned char>(s[i - 2]));
        if ((c == '+' || c == '-') && !cur.empty() && !exp_sign) {
            terms.push_back(cur);
            cur.clear();
        }
        cur += c;
    }
    terms.push_back(cur);

    for (std::string t : terms) {
        double sign = 1.0;
        if (t[0] == '+' || t[0] == '-') {
            sign = t[0] == '-' ? -1.0 : 1.0;
            t = t.substr(1);
        }
        if (t.empty()) throw ConfigError("bad expression '" + text + "'");
        double coef = 1.0;
        std::string var = t;
        if (const auto star = t.find('*'); star != std::string::npos) {
            coef = parse_number(t.substr(0, star));
            var = t.substr(star + 1);
        }
        coef *= sign;
        if (var == "eps1") e.c_eps1_ += coef;
        else if (var == "eps2") e.c_eps2_ += coef;
        else if (var == "delta_z") e.c_dz_ += coef;
        else if (var == "delta_x") e.c_dx_ += coef;
        else if (t.find('*') == std::string::npos) e.constant_ += sign * parse_number(var);
        else throw ConfigError("unknown variable '" + var + "' in '" + text + "'");
    }
    return e;
}

double ParamExpr::eval(double eps1, double eps2, double delta_z, double delta_x) const
{
    return constant_ + c_eps1_ * eps1 + c_eps2_ * eps2 + c_dz_ * delta_z + c_dx_ * delta_x;
}

std::vector<double> Axis::values() const
{
    std::vector<double> v(steps);
    for (std::size_t k = 0; k < steps; ++k)
        v[k] = steps == 1 ? start : start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
    return v;
}

void Point::set(const std::string& param, double value)
{
    if (param == "delta_T") delta_t = value;
    else if (param == "delta_z") delta_z = value;
    else if (param == "delta_x") delta_x = value;
    else if (param == "eps1") eps1 = value;
    else if (param == "eps2") eps2 = value;
    else if (param == "gamma_L") gamma_l = value;
    else if (param == "n1") n1 = std::round(value);
    else if (param == "n2") n2 = std::round(value);
    else throw ConfigError("unknown parameter '" + param + "'");
}

const std::vector<std::string>& sweepable_parameters()
{
    static const std::vector<std::string> names{"delta_T", "delta_z", "delta_x", "eps1", "eps2", "gamma_L", "n1", "n2"};
    return names;
}

BathSet RunConfig::baths_at(const Point& p) const
{
    BathSet b;
    auto fill = [&](BathSpec& s, const BathTemplate& t, double temperature) {
        s.coupling = t.coupling;
        s.cutoff = t.cutoff;
        s.resonance = t.resonance.eval(p.eps1, p.eps2, p.delta_z, p.delta_x);
        s.temperature = temperature;
    };
    fill(b.left, left, p.temperature + p.delta_t);
    fill(b.right, right, p.temperature);
    fill(b.cold, cold, scheme == BiasScheme::Symmetric ? p.temperature - p.delta_t : p.temperature);
    b.left.coupling = p.gamma_l;
    return b;
}

RunConfig parse_config(const std::string& yaml_text)
{
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("YAML: ") + e.what());
    }
    check_keys(root, {"name", "description", "solver", "system", "temperature", "baths", "sweep", "series", "negf",
                      "output"},
               "config");
    RunConfig cfg;
    cfg.name = get_or<std::string>(root, "name", "", "config");
    cfg.description = get_or<std::string>(root, "description", "", "config");
    cfg.solver = solver_from(get<std::string>(root, "solver", "config"));
    cfg.output = get_or<std::string>(root, "output", "", "config");

    const YAML::Node sys = root["system"];
    if (!sys) throw ConfigError("config: missing 'system'");
    check_keys(sys, {"eps1", "eps2", "delta_z", "delta_x", "n1", "n2"}, "system");
    cfg.base.eps1 = get<double>(sys, "eps1", "system");
    cfg.base.eps2 = get<double>(sys, "eps2", "system");
    cfg.base.delta_z = get_or<double>(sys, "delta_z", 0.0, "system");
    cfg.base.delta_x = get_or<double>(sys, "delta_x", 0.0, "system");
    cfg.base.n1 = get_or<double>(sys, "n1", 2.0, "system");
    cfg.base.n2 = get_or<double>(sys, "n2", 2.0, "system");

    const YAML::Node temp = root["temperature"];
    if (!temp) throw ConfigError("config: missing 'temperature'");
    check_keys(temp, {"T", "delta_T", "scheme"}, "temperature");
    cfg.base.temperature = get_or<double>(temp, "T", 1.0, "temperature");
    cfg.base.delta_t = get_or<double>(temp, "delta_T", 0.0, "temperature");
    const auto scheme = get_or<std::string>(temp, "scheme", "symmetric", "temperature");
    if (scheme == "symmetric") cfg.scheme = BiasScheme::Symmetric;
    else if (scheme == "hot") cfg.scheme = BiasScheme::Hot;
    else throw ConfigError("temperature: scheme must be 'symmetric' or 'hot'");

    const YAML::Node baths = root["baths"];
    if (!baths) throw ConfigError("config: missing 'baths'");
    check_keys(baths, {"L", "R", "C"}, "baths");
    for (const char* key : {"L", "R", "C"})
        if (!baths[key]) throw ConfigError(std::string("baths: missing '") + key + "'");
    cfg.left = parse_bath(baths["L"], "baths.L");
    cfg.right = parse_bath(baths["R"], "baths.R");
    cfg.cold = parse_bath(baths["C"], "baths.C");
    cfg.base.gamma_l = cfg.left.coupling;

    const YAML::Node sw = root["sweep"];
    if (!sw) throw ConfigError("config: missing 'sweep'");
    check_keys(sw, {"param", "start", "stop", "steps"}, "sweep");
    cfg.sweep.param = get<std::string>(sw, "param", "sweep");
    cfg.sweep.start = get<double>(sw, "start", "sweep");
    cfg.sweep.stop = get<double>(sw, "stop", "sweep");
    const long steps = get<long>(sw, "steps", "sweep");
    if (steps < 1) throw ConfigError("sweep: steps must be >= 1");
    cfg.sweep.steps = static_cast<std::size_t>(steps);

    if (const YAML::Node se = root["series"]) {
        check_keys(se, {"param", "params", "values"}, "series");
        Series s;
        if (se["param"] && se["params"]) throw ConfigError("series: give either 'param' or 'params'");
        if (se["param"]) {
            s.params = {get<std::string>(se, "param", "series")};
            for (double v : get<std::vector<double>>(se, "values", "series")) s.values.push_back({v});
        } else {
            s.params = get<std::vector<std::string>>(se, "params", "series");
            s.values = get<std::vector<std::vector<double>>>(se, "values", "series");
        }
        cfg.series = s;
    }

    if (const YAML::Node ng = root["negf"]) {
        check_keys(ng, {"width_factor", "lamb_shift", "mixing", "tolerance", "max_iterations", "grid_refine"}, "negf");
        cfg.negf.width_factor = get_or<double>(ng, "width_factor", cfg.negf.width_factor, "negf");
        cfg.negf.lamb_shift = get_or<bool>(ng, "lamb_shift", cfg.negf.lamb_shift, "negf");
        cfg.negf.mixing = get_or<double>(ng, "mixing", cfg.negf.mixing, "negf");
        cfg.negf.tolerance = get_or<double>(ng, "tolerance", cfg.negf.tolerance, "negf");
        cfg.negf.max_iterations = get_or<std::size_t>(ng, "max_iterations", cfg.negf.max_iterations, "negf");
        cfg.negf.grid_refine = get_or<std::size_t>(ng, "grid_refine", cfg.negf.grid_refine, "negf");
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const RunConfig& cfg)
{
    const auto& names = sweepable_parameters();
    auto check_param = [&](const std::string& p, const std::string& where) {
        if (std::find(names.begin(), names.end(), p) == names.end())
            throw ConfigError(where + ": unknown parameter '" + p + "'");
        if (!applies(p, cfg.solver)) throw ConfigError(where + ": '" + p + "' does not apply to " + to_string(cfg.solver));
    };
    if (cfg.sweep.steps < 1) throw ConfigError("sweep: steps must be >= 1");
    check_param(cfg.sweep.param, "sweep");
    if (cfg.series) {
        if (cfg.series->params.empty()) throw ConfigError("series: needs at least one parameter");
        for (const auto& p : cfg.series->params) {
            check_param(p, "series");
            if (p == cfg.sweep.param) throw ConfigError("series: must differ from the sweep parameter");
            if (std::count(cfg.series->params.begin(), cfg.series->params.end(), p) > 1)
                throw ConfigError("series: duplicate parameter '" + p + "'");
        }
        if (cfg.series->values.empty()) throw ConfigError("series: needs at least one value");
        for (const auto& v : cfg.series->values)
            if (v.size() != cfg.series->params.size())
                throw ConfigError("series: every entry needs one value per parameter");
    }
    for (const BathTemplate* b : {&cfg.left, &cfg.right, &cfg.cold}) {
        if (!(b->coupling > 0.0)) throw ConfigError("baths: coupling must be > 0");
        if (!(b->cutoff > 0.0)) throw ConfigError("baths: cutoff must be > 0");
    }
    if (cfg.solver == SolverKind::Negf) {
        try {
            cfg.negf.validate();
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }

    check_point(cfg.base, cfg.solver, "system");
    for (double v : cfg.sweep.values()) {
        Point p = cfg.base;
        p.set(cfg.sweep.param, v);
        if (is_integer_param(cfg.sweep.param) && std::abs(v - std::round(v)) > 1e-9)
            throw ConfigError("sweep: " + cfg.sweep.param + " must take integer values");
        check_point(p, cfg.solver, "sweep");
        if (!cfg.series) continue;
        for (const auto& entry : cfg.series->values) {
            Point q = p;
            for (std::size_t k = 0; k < entry.size(); ++k) {
                if (is_integer_param(cfg.series->params[k]) && std::abs(entry[k] - std::round(entry[k])) > 1e-9)
                    throw ConfigError("series: " + cfg.series->params[k] + " must take integer values");
                q.set(cfg.series->params[k], entry[k]);
            }
            check_point(q, cfg.solver, "series");
        }
    }
}

} // namespace qar
