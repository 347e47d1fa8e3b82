#include "polya/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace polya {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

json params_json(const UrnParams& p) {
    return json{{"m", p.m}, {"S", p.S}, {"b", p.b}, {"a", p.a}, {"c", p.c}, {"d", p.d},
                {"class", p.is_large() ? "LargeNonTriangular" : "SimulationOnly"}};
}

void metadata_line(std::ostringstream& os, const std::string& key, const std::string& value) {
    os << "# " << key << "=" << value << "\n";
}

}  // namespace

std::string sample_set_csv(const SampleSet& s) {
    std::ostringstream os;
    metadata_line(os, "kind", to_string(s.kind));
    metadata_line(os, "m", std::to_string(s.params.m));
    metadata_line(os, "S", std::to_string(s.params.S));
    metadata_line(os, "b", std::to_string(s.params.b));
    metadata_line(os, "alpha", std::to_string(s.init.red));
    metadata_line(os, "beta", std::to_string(s.init.black));
    metadata_line(os, "n_steps", std::to_string(s.n_steps));
    metadata_line(os, "replicas", std::to_string(s.replicas));
    metadata_line(os, "seed", std::to_string(s.seed));
    os << "value\n";
    for (double v : s.values) os << fmt(v) << "\n";
    return os.str();
}

std::string sample_set_json(const SampleSet& s) {
    json j;
    j["kind"] = to_string(s.kind);
    j["params"] = params_json(s.params);
    j["init"] = {{"alpha", s.init.red}, {"beta", s.init.black}};
    j["n_steps"] = s.n_steps;
    j["replicas"] = s.replicas;
    j["seed"] = s.seed;
    j["values"] = s.values;
    return j.dump(2) + "\n";
}

SampleSet sample_set_from_csv(const std::string& text) {
    SampleSet s;
    std::istringstream is(text);
    std::string line;
    int m = 0, S = 0, b = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(2, eq - 2);
            std::string value = line.substr(eq + 1);
            if (key == "kind")
                s.kind = sample_kind_from_string(value);
            else if (key == "m")
                m = std::stoi(value);
            else if (key == "S")
                S = std::stoi(value);
            else if (key == "b")
                b = std::stoi(value);
            else if (key == "alpha")
                s.init.red = std::stoll(value);
            else if (key == "beta")
                s.init.black = std::stoll(value);
            else if (key == "n_steps")
                s.n_steps = std::stoll(value);
            else if (key == "replicas")
                s.replicas = std::stoll(value);
            else if (key == "seed")
                s.seed = std::stoull(value);
            continue;
        }
        if (!header_seen) {
            if (line != "value") throw std::runtime_error("sample_set_from_csv: bad column header");
            header_seen = true;
            continue;
        }
        s.values.push_back(std::stod(line));
    }
    s.params = validate_params(m, S, b);
    if (s.replicas != static_cast<std::int64_t>(s.values.size()))
        throw std::runtime_error("sample_set_from_csv: replica count does not match rows");
    return s;
}

std::string moment_table_csv(const MomentTable& t) {
    std::ostringstream os;
    metadata_line(os, "m", std::to_string(t.params.m));
    metadata_line(os, "S", std::to_string(t.params.S));
    metadata_line(os, "b", std::to_string(t.params.b));
    metadata_line(os, "order", std::to_string(t.order));
    metadata_line(os, "precision", t.precision_mode == PrecisionMode::Double ? "double" : "extended");
    os << "n,a_n,b_n,residual\n";
    for (int n = 0; n <= t.order; ++n)
        os << n << "," << fmt(t.a_seq[static_cast<std::size_t>(n)]) << ","
           << fmt(t.b_seq[static_cast<std::size_t>(n)]) << ","
           << fmt(t.residuals[static_cast<std::size_t>(n)]) << "\n";
    return os.str();
}

std::string moment_table_json(const MomentTable& t) {
    json j;
    j["params"] = params_json(t.params);
    j["order"] = t.order;
    j["precision"] = t.precision_mode == PrecisionMode::Double ? "double" : "extended";
    j["a_seq"] = t.a_seq;
    j["b_seq"] = t.b_seq;
    j["egf_a"] = t.egf_a;
    j["egf_b"] = t.egf_b;
    j["residuals"] = t.residuals;
    return j.dump(2) + "\n";
}

std::string density_grid_csv(const DensityGrid& g) {
    std::ostringstream os;
    metadata_line(os, "method", g.method);
    metadata_line(os, "m", std::to_string(g.params.m));
    metadata_line(os, "S", std::to_string(g.params.S));
    metadata_line(os, "b", std::to_string(g.params.b));
    metadata_line(os, "alpha", std::to_string(g.init.red));
    metadata_line(os, "beta", std::to_string(g.init.black));
    metadata_line(os, "truncation_T", fmt(g.truncation_T));
    metadata_line(os, "tolerance", fmt(g.tolerance));
    os << "x,p,error_estimate\n";
    for (std::size_t i = 0; i < g.points.size(); ++i)
        os << fmt(g.points[i]) << "," << fmt(g.values[i]) << ","
           << (i < g.errors.size() ? fmt(g.errors[i]) : "0") << "\n";
    return os.str();
}

std::string density_grid_json(const DensityGrid& g) {
    json j;
    j["method"] = g.method;
    j["params"] = params_json(g.params);
    j["init"] = {{"alpha", g.init.red}, {"beta", g.init.black}};
    j["truncation_T"] = g.truncation_T;
    j["tolerance"] = g.tolerance;
    j["x"] = g.points;
    j["p"] = g.values;
    j["error_estimate"] = g.errors;
    return j.dump(2) + "\n";
}

std::string charfun_table_csv(const CharFunTable& t) {
    std::ostringstream os;
    metadata_line(os, "m", std::to_string(t.params.m));
    metadata_line(os, "S", std::to_string(t.params.S));
    metadata_line(os, "b", std::to_string(t.params.b));
    metadata_line(os, "alpha", std::to_string(t.init.red));
    metadata_line(os, "beta", std::to_string(t.init.black));
    os << "x,re,im\n";
    for (std::size_t i = 0; i < t.x.size(); ++i)
        os << fmt(t.x[i]) << "," << fmt(t.value[i].real()) << "," << fmt(t.value[i].imag()) << "\n";
    return os.str();
}

std::string charfun_table_json(const CharFunTable& t) {
    json j;
    j["params"] = params_json(t.params);
    j["init"] = {{"alpha", t.init.red}, {"beta", t.init.black}};
    j["x"] = t.x;
    std::vector<double> re, im;
    for (auto v : t.value) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace polya
