#include "fvspike/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fvspike/grid_io.hpp"

namespace fvspike {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

// Strips a trailing "# comment" that is not inside quotes.
std::string strip_comment(const std::string& line) {
    char quote = 0;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#' || c == ';') {
            return line.substr(0, k);
        }
    }
    return line;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "run.name",
        "domain.x_lo", "domain.x_hi", "domain.y_lo", "domain.y_hi", "domain.square",
        "grid.n", "grid.n_x", "grid.n_y",
        "params.d", "params.q",
        "guess.kind", "guess.expression", "guess.m", "guess.kappa", "guess.lo", "guess.hi", "guess.seed",
        "guess.clamp_min",
        "newton.tol_residual", "newton.tol_step", "newton.max_iterations", "newton.damping", "newton.armijo_c",
        "newton.shrink", "newton.min_step", "newton.max_step",
        "output.files", "output.levels", "output.level_count",
        "analysis.prominence",
        "expect.converged", "expect.positive", "expect.nonconstant", "expect.min_maxima",
        "expect.min_interior_maxima", "expect.min_minima_below_mean", "expect.expected_maxima",
        "expect.max_value", "expect.max_value_factor", "expect.argmax", "expect.argmax_cells",
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const ConfigMap& map) : map_(map) {
        for (const auto& [key, value] : map_) {
            if (!known_keys().contains(key)) {
                throw ConfigError(key, value.line, "unknown setting");
            }
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return map_.contains(key); }

    [[nodiscard]] const ConfigValue* find(const std::string& key) const {
        const auto it = map_.find(key);
        return it == map_.end() ? nullptr : &it->second;
    }

    [[nodiscard]] double real(const std::string& key, double fallback) const {
        const ConfigValue* v = find(key);
        return v ? to_real(key, *v) : fallback;
    }

    [[nodiscard]] std::optional<double> opt_real(const std::string& key) const {
        const ConfigValue* v = find(key);
        return v ? std::optional<double>(to_real(key, *v)) : std::nullopt;
    }

    [[nodiscard]] int integer(const std::string& key, int fallback) const {
        const ConfigValue* v = find(key);
        return v ? to_int(key, *v) : fallback;
    }

    [[nodiscard]] std::optional<int> opt_int(const std::string& key) const {
        const ConfigValue* v = find(key);
        return v ? std::optional<int>(to_int(key, *v)) : std::nullopt;
    }

    [[nodiscard]] std::optional<bool> opt_bool(const std::string& key) const {
        const ConfigValue* v = find(key);
        if (!v) return std::nullopt;
        std::string t = v->text;
        std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
        if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
        if (t == "false" || t == "no" || t == "0" || t == "off") return false;
        throw ConfigError(key, v->line, "expected a boolean, got '" + v->text + "'");
    }

    [[nodiscard]] std::string text(const std::string& key, const std::string& fallback) const {
        const ConfigValue* v = find(key);
        return v ? v->text : fallback;
    }

    static double to_real(const std::string& key, const ConfigValue& v) {
        const std::string t = trim(v.text);
        char* end = nullptr;
        errno = 0;
        const double x = std::strtod(t.c_str(), &end);
        if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(x)) {
            throw ConfigError(key, v.line, "expected a finite real number, got '" + v.text + "'");
        }
        return x;
    }

    static int to_int(const std::string& key, const ConfigValue& v) {
        const double x = to_real(key, v);
        if (x != std::floor(x) || std::abs(x) > 1e9) {
            throw ConfigError(key, v.line, "expected an integer, got '" + v.text + "'");
        }
        return static_cast<int>(x);
    }

private:
    const ConfigMap& map_;
};

std::string json_scalar_text(const nlohmann::json& v, const std::string& field) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_double(v.get<double>());
    throw ConfigError(field, 0, "unsupported JSON value type");
}

std::string json_value_text(const nlohmann::json& v, const std::string& field) {
    if (v.is_array()) {
        std::string out;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k > 0) out += ',';
            out += json_scalar_text(v[k], field);
        }
        return out;
    }
    return json_scalar_text(v, field);
}

}  // namespace

ConfigError::ConfigError(const std::string& field, int line, const std::string& message)
    : Error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
            (field.empty() ? std::string() : field + ": ") + message),
      field_(field),
      line_(line) {}

std::vector<double> parse_real_list(std::string_view text, const std::string& field, int line) {
    std::vector<double> out;
    const std::string all = trim(text);
    if (all.empty()) throw ConfigError(field, line, "expected a comma-separated list of numbers");
    std::istringstream ss(all);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(Reader::to_real(field, {trim(item), line}));
    }
    return out;
}

ConfigSource parse_config_text(std::string_view text) {
    ConfigSource src;
    ConfigMap* target = &src.base;
    std::string section = "run";
    bool in_variant = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("", line_no, "unterminated section header");
            }
            const std::string header = trim(line.substr(1, line.size() - 2));
            if (header.rfind("variant", 0) == 0 && (header.size() == 7 || std::isspace(static_cast<unsigned char>(header[7])))) {
                const std::string name = trim(header.substr(7));
                if (name.empty()) throw ConfigError("", line_no, "variant needs a name");
                src.variants.emplace_back(name, ConfigMap{});
                target = &src.variants.back().second;
                in_variant = true;
                continue;
            }
            if (header.empty() || header.find_first_of(" \t.") != std::string::npos) {
                throw ConfigError("", line_no, "bad section name '" + header + "'");
            }
            section = header;
            target = &src.base;
            in_variant = false;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("", line_no, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("", line_no, "empty key");
        std::string full;
        if (in_variant) {
            if (key.find('.') == std::string::npos) {
                throw ConfigError(key, line_no, "variant keys must be written as section.key");
            }
            full = key;
        } else {
            full = section + "." + key;
        }
        if (target->contains(full)) {
            throw ConfigError(full, line_no, "duplicate setting");
        }
        (*target)[full] = {value, line_no};
    }
    return src;
}

ConfigSource parse_config_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", 0, std::string("invalid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("config") && doc["config"].is_object()) {
        doc = doc["config"];
    }
    if (!doc.is_object()) {
        throw ConfigError("", 0, "JSON config must be an object of sections");
    }
    ConfigSource src;
    for (const auto& [section, body] : doc.items()) {
        if (section == "variants") {
            if (!body.is_object()) throw ConfigError("variants", 0, "expected an object");
            for (const auto& [name, overrides] : body.items()) {
                if (!overrides.is_object()) throw ConfigError("variants." + name, 0, "expected an object");
                ConfigMap m;
                for (const auto& [key, value] : overrides.items()) {
                    m[key] = {json_value_text(value, key), 0};
                }
                src.variants.emplace_back(name, std::move(m));
            }
            continue;
        }
        if (!body.is_object()) {
            throw ConfigError(section, 0, "expected an object of settings");
        }
        for (const auto& [key, value] : body.items()) {
            const std::string full = section + "." + key;
            src.base[full] = {json_value_text(value, full), 0};
        }
    }
    return src;
}

ConfigSource load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("", 0, "cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return parse_config_json(text);
    }
    return parse_config_text(text);
}

void RunConfig::validate() const {
    domain.validate();
    if (n_x < 1 || n_y < 1) throw InvalidArgument("grid sizes must be positive");
    params.validate();
    newton.validate();
    if (!std::isfinite(prominence) || prominence < 0.0) throw InvalidArgument("prominence must be >= 0");
    if (level_count < 0) throw InvalidArgument("level_count must be >= 0");
}

RunConfig run_config_from_map(const ConfigMap& map) {
    const Reader r(map);
    RunConfig c;
    c.name = r.text("run.name", c.name);

    if (const ConfigValue* sq = r.find("domain.square")) {
        const auto bounds = parse_real_list(sq->text, "domain.square", sq->line);
        if (bounds.size() != 2) throw ConfigError("domain.square", sq->line, "expected 'lo, hi'");
        c.domain = Domain::square(bounds[0], bounds[1]);
    }
    c.domain.x_lo = r.real("domain.x_lo", c.domain.x_lo);
    c.domain.x_hi = r.real("domain.x_hi", c.domain.x_hi);
    c.domain.y_lo = r.real("domain.y_lo", c.domain.y_lo);
    c.domain.y_hi = r.real("domain.y_hi", c.domain.y_hi);

    const int n = r.integer("grid.n", c.n_x);
    c.n_x = r.integer("grid.n_x", n);
    c.n_y = r.integer("grid.n_y", n);

    c.params.d = r.real("params.d", c.params.d);
    c.params.q = r.real("params.q", c.params.q);

    const std::string kind = r.text("guess.kind", "constant");
    if (kind == "expression") {
        const ConfigValue* e = r.find("guess.expression");
        if (!e) throw ConfigError("guess.expression", 0, "required when guess.kind = expression");
        c.guess.kind = ExpressionSpec{e->text};
    } else {
        BuiltinSpec b;
        try {
            b.name = builtin_from_string(kind);
        } catch (const InvalidArgument& e) {
            const ConfigValue* v = r.find("guess.kind");
            throw ConfigError("guess.kind", v ? v->line : 0, e.what());
        }
        b.m = r.real("guess.m", b.m);
        b.kappa = r.real("guess.kappa", b.kappa);
        b.lo = r.real("guess.lo", b.lo);
        b.hi = r.real("guess.hi", b.hi);
        const int seed = r.integer("guess.seed", 0);
        if (seed < 0) throw ConfigError("guess.seed", r.find("guess.seed")->line, "seed must be >= 0");
        b.seed = static_cast<std::uint64_t>(seed);
        c.guess.kind = b;
    }
    c.guess.clamp_min = r.real("guess.clamp_min", c.guess.clamp_min);

    c.newton.tol_residual = r.real("newton.tol_residual", c.newton.tol_residual);
    c.newton.tol_step = r.real("newton.tol_step", c.newton.tol_step);
    c.newton.max_iterations = r.integer("newton.max_iterations", c.newton.max_iterations);
    const std::string damping = r.text("newton.damping", "armijo");
    if (damping == "none") {
        c.newton.damping.reset();
    } else if (damping == "armijo") {
        ArmijoDamping a;
        a.c = r.real("newton.armijo_c", a.c);
        a.shrink = r.real("newton.shrink", a.shrink);
        a.min_step = r.real("newton.min_step", a.min_step);
        a.max_step = r.real("newton.max_step", a.max_step);
        c.newton.damping = a;
    } else {
        const ConfigValue* v = r.find("newton.damping");
        throw ConfigError("newton.damping", v ? v->line : 0, "expected 'armijo' or 'none', got '" + damping + "'");
    }

    if (const ConfigValue* files = r.find("output.files")) {
        c.outputs = OutputSet{false, false, false, false};
        std::istringstream ss(files->text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string f = trim(item);
            if (f == "grid_csv") c.outputs.grid_csv = true;
            else if (f == "report_json") c.outputs.report_json = true;
            else if (f == "contours_json") c.outputs.contours_json = true;
            else if (f == "peaks_csv") c.outputs.peaks_csv = true;
            else if (!f.empty()) throw ConfigError("output.files", files->line, "unknown output '" + f + "'");
        }
    }
    if (const ConfigValue* lv = r.find("output.levels")) {
        c.levels = parse_real_list(lv->text, "output.levels", lv->line);
    }
    c.level_count = r.integer("output.level_count", c.level_count);
    c.prominence = r.real("analysis.prominence", c.prominence);

    Expectations& x = c.expect;
    x.converged = r.opt_bool("expect.converged");
    x.positive = r.opt_bool("expect.positive");
    x.nonconstant = r.opt_bool("expect.nonconstant");
    x.min_maxima = r.opt_int("expect.min_maxima");
    x.min_interior_maxima = r.opt_int("expect.min_interior_maxima");
    x.min_minima_below_mean = r.opt_int("expect.min_minima_below_mean");
    x.expected_maxima = r.opt_int("expect.expected_maxima");
    x.max_value = r.opt_real("expect.max_value");
    x.max_value_factor = r.real("expect.max_value_factor", x.max_value_factor);
    if (const ConfigValue* am = r.find("expect.argmax")) {
        const auto xy = parse_real_list(am->text, "expect.argmax", am->line);
        if (xy.size() != 2) throw ConfigError("expect.argmax", am->line, "expected 'x, y'");
        x.argmax = std::array<double, 2>{xy[0], xy[1]};
    }
    x.argmax_cells = r.real("expect.argmax_cells", x.argmax_cells);

    const auto line_of = [&r](const std::string& key) {
        const ConfigValue* v = r.find(key);
        return v ? v->line : 0;
    };
    const auto require = [&line_of](bool ok, const std::string& key, const std::string& message) {
        if (!ok) throw ConfigError(key, line_of(key), message);
    };
    require(std::isfinite(c.params.d) && c.params.d > 0.0, "params.d", "d must be finite and > 0");
    require(std::isfinite(c.params.q) && c.params.q > 0.0, "params.q", "q must be finite and > 0");
    require(c.n_x >= 1, r.find("grid.n_x") ? "grid.n_x" : "grid.n", "grid sizes must be positive");
    require(c.n_y >= 1, r.find("grid.n_y") ? "grid.n_y" : "grid.n", "grid sizes must be positive");
    const auto section = [](const std::string& name, auto&& check) {
        try {
            check();
        } catch (const InvalidArgument& e) {
            throw ConfigError(name, 0, e.what());
        }
    };
    section("domain", [&c] { c.domain.validate(); });
    section("newton", [&c] { c.newton.validate(); });
    section("run", [&c] { c.validate(); });
    return c;
}

ConfigMap to_config_map(const RunConfig& c) {
    ConfigMap m;
    auto put = [&m](const std::string& key, std::string value) { m[key] = {std::move(value), 0}; };
    auto put_real = [&put](const std::string& key, double v) { put(key, format_double(v)); };
    auto put_bool = [&put](const std::string& key, bool v) { put(key, v ? "true" : "false"); };

    put("run.name", c.name);
    put_real("domain.x_lo", c.domain.x_lo);
    put_real("domain.x_hi", c.domain.x_hi);
    put_real("domain.y_lo", c.domain.y_lo);
    put_real("domain.y_hi", c.domain.y_hi);
    put("grid.n_x", std::to_string(c.n_x));
    put("grid.n_y", std::to_string(c.n_y));
    put_real("params.d", c.params.d);
    put_real("params.q", c.params.q);

    if (const auto* e = std::get_if<ExpressionSpec>(&c.guess.kind)) {
        put("guess.kind", "expression");
        put("guess.expression", e->source);
    } else {
        const auto& b = std::get<BuiltinSpec>(c.guess.kind);
        put("guess.kind", to_string(b.name));
        put_real("guess.m", b.m);
        put_real("guess.kappa", b.kappa);
        put_real("guess.lo", b.lo);
        put_real("guess.hi", b.hi);
        put("guess.seed", std::to_string(b.seed));
    }
    put_real("guess.clamp_min", c.guess.clamp_min);

    put_real("newton.tol_residual", c.newton.tol_residual);
    put_real("newton.tol_step", c.newton.tol_step);
    put("newton.max_iterations", std::to_string(c.newton.max_iterations));
    if (c.newton.damping) {
        put("newton.damping", "armijo");
        put_real("newton.armijo_c", c.newton.damping->c);
        put_real("newton.shrink", c.newton.damping->shrink);
        put_real("newton.min_step", c.newton.damping->min_step);
        if (std::isfinite(c.newton.damping->max_step)) put_real("newton.max_step", c.newton.damping->max_step);
    } else {
        put("newton.damping", "none");
    }

    std::string files;
    auto add = [&files](bool on, const char* name) {
        if (!on) return;
        if (!files.empty()) files += ',';
        files += name;
    };
    add(c.outputs.grid_csv, "grid_csv");
    add(c.outputs.report_json, "report_json");
    add(c.outputs.contours_json, "contours_json");
    add(c.outputs.peaks_csv, "peaks_csv");
    put("output.files", files);
    if (!c.levels.empty()) {
        std::string lv;
        for (std::size_t k = 0; k < c.levels.size(); ++k) {
            if (k > 0) lv += ',';
            lv += format_double(c.levels[k]);
        }
        put("output.levels", lv);
    }
    put("output.level_count", std::to_string(c.level_count));
    put_real("analysis.prominence", c.prominence);

    const Expectations& x = c.expect;
    if (x.converged) put_bool("expect.converged", *x.converged);
    if (x.positive) put_bool("expect.positive", *x.positive);
    if (x.nonconstant) put_bool("expect.nonconstant", *x.nonconstant);
    if (x.min_maxima) put("expect.min_maxima", std::to_string(*x.min_maxima));
    if (x.min_interior_maxima) put("expect.min_interior_maxima", std::to_string(*x.min_interior_maxima));
    if (x.min_minima_below_mean) put("expect.min_minima_below_mean", std::to_string(*x.min_minima_below_mean));
    if (x.expected_maxima) put("expect.expected_maxima", std::to_string(*x.expected_maxima));
    if (x.max_value) {
        put_real("expect.max_value", *x.max_value);
        put_real("expect.max_value_factor", x.max_value_factor);
    }
    if (x.argmax) {
        put("expect.argmax", format_double((*x.argmax)[0]) + "," + format_double((*x.argmax)[1]));
        put_real("expect.argmax_cells", x.argmax_cells);
    }
    return m;
}

std::vector<RunConfig> expand_runs(const ConfigSource& source) {
    std::vector<RunConfig> runs;
    runs.push_back(run_config_from_map(source.base));
    for (const auto& [name, overrides] : source.variants) {
        ConfigMap merged = source.base;
        for (const auto& [key, value] : overrides) merged[key] = value;
        RunConfig c = run_config_from_map(merged);
        if (!overrides.contains("run.name")) {
            c.name = c.name + "-" + name;
        }
        runs.push_back(std::move(c));
    }
    return runs;
}

}  // namespace fvspike
