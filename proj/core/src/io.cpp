#include "shearlet/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace shearlet::io {

using nlohmann::json;
using namespace regions;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(what, std::string("malformed JSON (") + e.what() + ")");
    }
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) fail(where, "expected an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) fail(where, "unknown field '" + k + "'");
}

const json& need(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) fail(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

double num(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

double num(const json& j, const std::string& where, const char* key) { return num(need(j, where, key), where + "." + key); }

double num_or(const json& j, const std::string& where, const char* key, double dflt) {
    return j.contains(key) ? num(j.at(key), where + "." + key) : dflt;
}

std::vector<double> nums(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(num(v, where));
    return out;
}

Vec2 vec2(const json& j, const std::string& where) {
    const auto v = nums(j, where);
    if (v.size() != 2) fail(where, "expected 2 numbers");
    return {v[0], v[1]};
}

Vec3 vec3(const json& j, const std::string& where) {
    const auto v = nums(j, where);
    if (v.size() != 3) fail(where, "expected 3 numbers");
    return {v[0], v[1], v[2]};
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

// Region constructors raise ConfigError on invariant violations; prefix the location.
template <class R, class S>
R build(const std::string& where, S&& shape) {
    try {
        return R(std::forward<S>(shape));
    } catch (const ConfigError& e) {
        fail(where, e.what());
    }
}

bool is_3d_type(const std::string& t) {
    return t == "Ball" || t == "Ellipsoid" || t == "HalfSpace" || t == "Pyramid" || t == "CutBall" ||
           t == "Cylinder" || t == "GraphRegion3D";
}

Region2D region2d(const json& j, const std::string& where) {
    const std::string type = text(need(j, where, "type"), where + ".type");
    if (type == "Disk") {
        allow_keys(j, where, {"type", "name", "center", "radius"});
        return build<Region2D>(where, Disk{vec2(need(j, where, "center"), where + ".center"), num(j, where, "radius")});
    }
    if (type == "Ellipse") {
        allow_keys(j, where, {"type", "name", "center", "semi_axes", "rotation"});
        return build<Region2D>(where, Ellipse{vec2(need(j, where, "center"), where + ".center"),
                                              vec2(need(j, where, "semi_axes"), where + ".semi_axes"),
                                              num_or(j, where, "rotation", 0.0)});
    }
    if (type == "HalfPlane") {
        allow_keys(j, where, {"type", "name", "normal", "offset"});
        return build<Region2D>(where, HalfPlane{vec2(need(j, where, "normal"), where + ".normal"),
                                                num_or(j, where, "offset", 0.0)});
    }
    if (type == "ConvexPolygon") {
        allow_keys(j, where, {"type", "name", "vertices"});
        const json& vs = need(j, where, "vertices");
        if (!vs.is_array()) fail(where + ".vertices", "expected an array of points");
        ConvexPolygon poly;
        for (const auto& v : vs) poly.vertices.push_back(vec2(v, where + ".vertices"));
        return build<Region2D>(where, std::move(poly));
    }
    if (type == "GraphRegion") {
        allow_keys(j, where, {"type", "name", "left", "right", "box_min", "box_max", "third_derivative_bound"});
        GraphRegion g;
        g.left = Polynomial(nums(need(j, where, "left"), where + ".left"));
        g.right = Polynomial(nums(need(j, where, "right"), where + ".right"));
        if (j.contains("box_min")) g.box_min = vec2(j.at("box_min"), where + ".box_min");
        if (j.contains("box_max")) g.box_max = vec2(j.at("box_max"), where + ".box_max");
        g.third_derivative_bound = num_or(j, where, "third_derivative_bound", 0.0);
        return build<Region2D>(where, std::move(g));
    }
    if (type == "BooleanDifference") {
        allow_keys(j, where, {"type", "name", "keep", "remove"});
        auto keep = std::make_shared<const Region2D>(region2d(need(j, where, "keep"), where + ".keep"));
        auto remove = std::make_shared<const Region2D>(region2d(need(j, where, "remove"), where + ".remove"));
        return build<Region2D>(where, BooleanDifference{std::move(keep), std::move(remove)});
    }
    fail(where, "unknown 2D region type '" + type + "'");
}

Region3D region3d(const json& j, const std::string& where) {
    const std::string type = text(need(j, where, "type"), where + ".type");
    if (type == "Ball") {
        allow_keys(j, where, {"type", "name", "center", "radius"});
        return build<Region3D>(where, Ball{vec3(need(j, where, "center"), where + ".center"), num(j, where, "radius")});
    }
    if (type == "Ellipsoid") {
        allow_keys(j, where, {"type", "name", "center", "semi_axes"});
        return build<Region3D>(where, Ellipsoid{vec3(need(j, where, "center"), where + ".center"),
                                                vec3(need(j, where, "semi_axes"), where + ".semi_axes")});
    }
    if (type == "HalfSpace") {
        allow_keys(j, where, {"type", "name", "normal", "offset"});
        return build<Region3D>(where, HalfSpace{vec3(need(j, where, "normal"), where + ".normal"),
                                                num_or(j, where, "offset", 0.0)});
    }
    if (type == "Pyramid") {
        allow_keys(j, where, {"type", "name", "apex", "base"});
        Pyramid p;
        p.apex = vec3(need(j, where, "apex"), where + ".apex");
        const json& bs = need(j, where, "base");
        if (!bs.is_array()) fail(where + ".base", "expected an array of points");
        for (const auto& v : bs) p.base.push_back(vec3(v, where + ".base"));
        return build<Region3D>(where, std::move(p));
    }
    if (type == "CutBall") {
        allow_keys(j, where, {"type", "name", "center", "radius", "plane_normal", "plane_offset"});
        return build<Region3D>(where, CutBall{vec3(need(j, where, "center"), where + ".center"),
                                              num(j, where, "radius"),
                                              vec3(need(j, where, "plane_normal"), where + ".plane_normal"),
                                              num_or(j, where, "plane_offset", 0.0)});
    }
    if (type == "Cylinder") {
        allow_keys(j, where, {"type", "name", "axis_point", "axis", "radius"});
        return build<Region3D>(where, Cylinder{vec3(need(j, where, "axis_point"), where + ".axis_point"),
                                               vec3(need(j, where, "axis"), where + ".axis"), num(j, where, "radius")});
    }
    if (type == "GraphRegion3D") {
        allow_keys(j, where, {"type", "name", "height", "box_min", "box_max"});
        GraphRegion3D g;
        const json& hs = need(j, where, "height");
        if (!hs.is_array()) fail(where + ".height", "expected an array of terms");
        for (const auto& t : hs) {
            const std::string w = where + ".height";
            allow_keys(t, w, {"i", "j", "c"});
            const double i = num(t, w, "i"), jj = num(t, w, "j");
            if (i < 0 || jj < 0 || i != std::floor(i) || jj != std::floor(jj)) fail(w, "powers must be non-negative integers");
            g.height.push_back({static_cast<int>(i), static_cast<int>(jj), num(t, w, "c")});
        }
        if (j.contains("box_min")) g.box_min = vec3(j.at("box_min"), where + ".box_min");
        if (j.contains("box_max")) g.box_max = vec3(j.at("box_max"), where + ".box_max");
        return build<Region3D>(where, std::move(g));
    }
    fail(where, "unknown 3D region type '" + type + "'");
}

}  // namespace

// ---------------------------------------------------------------- scenes

const Region2D* Scene::find2d(const std::string& name) const {
    if (name.empty()) return regions2d.size() == 1 && regions3d.empty() ? &regions2d.front().region : nullptr;
    for (const auto& r : regions2d)
        if (r.name == name) return &r.region;
    return nullptr;
}

const Region3D* Scene::find3d(const std::string& name) const {
    if (name.empty()) return regions3d.size() == 1 && regions2d.empty() ? &regions3d.front().region : nullptr;
    for (const auto& r : regions3d)
        if (r.name == name) return &r.region;
    return nullptr;
}

std::vector<std::string> Scene::names() const {
    std::vector<std::string> out;
    for (const auto& r : regions2d) out.push_back(r.name);
    for (const auto& r : regions3d) out.push_back(r.name);
    return out;
}

Scene parse_scene(const std::string& json_text) {
    const json doc = parse_json(json_text, "scene");
    allow_keys(doc, "scene", {"regions", "description"});
    const json& rs = need(doc, "scene", "regions");
    if (!rs.is_array() || rs.empty()) fail("scene.regions", "expected a non-empty array");
    Scene scene;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const std::string where = "scene.regions[" + std::to_string(i) + "]";
        const json& r = rs[i];
        if (!r.is_object()) fail(where, "expected an object");
        const std::string name = text(need(r, where, "name"), where + ".name");
        if (name.empty() || !seen.insert(name).second) fail(where, "region names must be unique and non-empty");
        const std::string type = text(need(r, where, "type"), where + ".type");
        if (is_3d_type(type)) scene.regions3d.push_back({name, region3d(r, where)});
        else scene.regions2d.push_back({name, region2d(r, where)});
    }
    return scene;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scene load_scene(const std::string& path) { return parse_scene(read_file(path)); }

// ---------------------------------------------------------------- points

std::vector<QueryPoint> parse_points(const std::string& json_text) {
    const json doc = parse_json(json_text, "points");
    allow_keys(doc, "points", {"points"});
    const json& ps = need(doc, "points", "points");
    if (!ps.is_array()) fail("points.points", "expected an array");
    std::vector<QueryPoint> out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string where = "points[" + std::to_string(i) + "]";
        const json& p = ps[i];
        allow_keys(p, where, {"region", "position", "shear", "cone", "pyramid", "label"});
        QueryPoint q;
        if (p.contains("region")) q.region = text(p.at("region"), where + ".region");
        q.position = nums(need(p, where, "position"), where + ".position");
        if (q.position.size() != 2 && q.position.size() != 3) fail(where + ".position", "expected 2 or 3 numbers");
        if (p.contains("shear")) {
            const json& s = p.at("shear");
            if (s.is_array()) q.shear3d = vec2(s, where + ".shear");
            else q.shear = num(s, where + ".shear");
            if ((q.shear && q.position.size() != 2) || (q.shear3d && q.position.size() != 3))
                fail(where + ".shear", "a 2D point takes a scalar shear, a 3D point a pair");
        }
        if (p.contains("cone")) {
            const std::string c = text(p.at("cone"), where + ".cone");
            if (c == "horizontal") q.cone = transform2d::Cone::Horizontal;
            else if (c == "vertical") q.cone = transform2d::Cone::Vertical;
            else fail(where + ".cone", "expected 'horizontal' or 'vertical'");
        }
        if (p.contains("pyramid")) {
            const double d = num(p.at("pyramid"), where + ".pyramid");
            if (d != 1 && d != 2 && d != 3) fail(where + ".pyramid", "expected 1, 2 or 3");
            q.pyramid = static_cast<int>(d);
        }
        if (p.contains("label")) q.label = text(p.at("label"), where + ".label");
        out.push_back(std::move(q));
    }
    if (out.empty()) fail("points", "the point list is empty");
    return out;
}

std::vector<QueryPoint> load_points(const std::string& path_or_inline) {
    const auto first = path_or_inline.find_first_not_of(" \t");
    const bool inline_list = first != std::string::npos &&
                             (std::isdigit(static_cast<unsigned char>(path_or_inline[first])) ||
                              path_or_inline[first] == '-' || path_or_inline[first] == '+' ||
                              path_or_inline[first] == '.');
    if (!inline_list) return parse_points(read_file(path_or_inline));
    std::vector<QueryPoint> out;
    std::stringstream ss(path_or_inline);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        QueryPoint q;
        std::stringstream cs(item);
        std::string c;
        while (std::getline(cs, c, ',')) {
            try {
                std::size_t used = 0;
                q.position.push_back(std::stod(c, &used));
                if (c.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(c);
            } catch (const std::exception&) {
                fail("points", "cannot read '" + item + "' as a point");
            }
        }
        if (q.position.size() != 2 && q.position.size() != 3) fail("points", "'" + item + "' needs 2 or 3 coordinates");
        out.push_back(std::move(q));
    }
    if (out.empty()) fail("points", "the point list is empty");
    return out;
}

// ---------------------------------------------------------------- generators

namespace {

PiecewisePolynomial pieces(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of pieces");
    std::vector<Piece> out;
    for (const auto& p : j) {
        allow_keys(p, where, {"support", "coeffs"});
        const Vec2 s = vec2(need(p, where, "support"), where + ".support");
        if (!(s.x() < s.y())) fail(where + ".support", "expected lo < hi");
        out.push_back({s.x(), s.y(), Polynomial(nums(need(p, where, "coeffs"), where + ".coeffs"))});
    }
    try {
        return PiecewisePolynomial(std::move(out));
    } catch (const ConfigError& e) {
        fail(where, e.what());
    }
}

}  // namespace

generators::Generator default_generator(int dimension) {
    if (dimension == 2) return generators::default_2d();
    if (dimension == 3) return generators::default_3d();
    throw ConfigError("dimension must be 2 or 3");
}

generators::Generator parse_generator(const std::string& json_text) {
    const json doc = parse_json(json_text, "generator");
    const std::string w = "generator";
    if (!doc.is_object()) fail(w, "expected an object");
    const double dim = num(doc, w, "dimension");
    if (dim != 2 && dim != 3) fail(w + ".dimension", "expected 2 or 3");
    try {
        if (doc.contains("preset")) {
            const std::string preset = text(doc.at("preset"), w + ".preset");
            if (preset == "default") {
                allow_keys(doc, w, {"dimension", "preset", "size", "radius_factor", "asymmetry", "shift_factor"});
                generators::DefaultParameters p;
                p.size = num_or(doc, w, "size", p.size);
                p.radius_factor = num_or(doc, w, "radius_factor", p.radius_factor);
                p.asymmetry = num_or(doc, w, "asymmetry", p.asymmetry);
                p.shift_factor = num_or(doc, w, "shift_factor", p.shift_factor);
                if (!(p.size > 0.0) || !(p.radius_factor > 0.0)) fail(w, "size and radius_factor must be positive");
                return dim == 2 ? generators::default_2d(p) : generators::default_3d(p);
            }
            if (preset == "detector") {
                allow_keys(doc, w, {"dimension", "preset", "beta", "radius"});
                if (dim != 2) fail(w, "the detector preset is two-dimensional");
                return generators::detector_2d(num_or(doc, w, "beta", 1.0), num_or(doc, w, "radius", 1.0));
            }
            fail(w + ".preset", "unknown preset '" + preset + "'");
        }
        allow_keys(doc, w, {"dimension", "wavelet", "bump"});
        const json& wj = need(doc, w, "wavelet");
        allow_keys(wj, w + ".wavelet", {"pieces", "width", "shift"});
        const double width = num_or(wj, w + ".wavelet", "width", 1.0);
        generators::Wavelet1D wavelet(pieces(need(wj, w + ".wavelet", "pieces"), w + ".wavelet.pieces"), width, 0.0);
        if (wj.contains("shift")) {
            const json& s = wj.at("shift");
            if (s.is_string()) {
                if (s.get<std::string>() != "auto") fail(w + ".wavelet.shift", "expected a number or \"auto\"");
                wavelet = wavelet.shifted(generators::find_detector_shift(wavelet));
            } else {
                wavelet = wavelet.shifted(num(s, w + ".wavelet.shift"));
            }
        }
        const json& bj = need(doc, w, "bump");
        allow_keys(bj, w + ".bump", {"pieces", "factor", "radius"});
        const double radius = num(bj, w + ".bump", "radius");
        PiecewisePolynomial profile;
        if (bj.contains("pieces") == bj.contains("factor")) fail(w + ".bump", "give exactly one of 'pieces' or 'factor'");
        if (bj.contains("pieces")) profile = pieces(bj.at("pieces"), w + ".bump.pieces");
        else profile = generators::bump_profile(Polynomial(nums(bj.at("factor"), w + ".bump.factor")));
        return {static_cast<int>(dim), std::move(wavelet), generators::Bump1D(std::move(profile), radius)};
    } catch (const json::exception& e) {
        fail(w, e.what());
    }
}

generators::Generator load_generator(const std::string& path) { return parse_generator(read_file(path)); }

// ---------------------------------------------------------------- scales

std::vector<double> parse_scales(const std::string& t) {
    std::vector<double> out;
    const auto dots = t.find("..");
    try {
        if (dots != std::string::npos) {
            std::size_t u0 = 0, u1 = 0;
            const std::string a = t.substr(0, dots), b = t.substr(dots + 2);
            const int j0 = std::stoi(a, &u0), j1 = std::stoi(b, &u1);
            if (u0 != a.size() || u1 != b.size()) throw std::invalid_argument(t);
            out = transform2d::dyadic_scales(j0, j1);
        } else {
            std::stringstream ss(t);
            std::string item;
            while (std::getline(ss, item, ',')) {
                std::size_t used = 0;
                out.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail("scales", "cannot read '" + t + "'; expected j0..j1 or a comma list");
    }
    if (out.size() < 2) fail("scales", "need at least two scales");
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out[i] > 0.0)) fail("scales", "scales must be positive");
        if (i > 0 && !(out[i] < out[i - 1])) fail("scales", "scales must be strictly decreasing");
    }
    return out;
}

// ---------------------------------------------------------------- CSV

std::string number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

void write_profile_csv(std::ostream& os, const transform2d::DecayProfile& p) {
    os << "a,coefficient,converged,grid_n\n";
    for (const auto& e : p.entries)
        os << number(e.a) << ',' << (e.valid ? number(e.value) : std::string("nan")) << ',' << (e.valid ? 1 : 0) << ','
           << e.panels << '\n';
}

void write_profile_csv(std::ostream& os, const transform3d::DecayProfile& p) {
    os << "a,coefficient,converged,grid_n" << (p.needle ? ",beta" : "") << '\n';
    for (const auto& e : p.entries) {
        os << number(e.a) << ',' << (e.valid ? number(e.value) : std::string("nan")) << ',' << (e.valid ? 1 : 0) << ','
           << e.panels;
        if (p.needle) os << ',' << number(p.beta);
        os << '\n';
    }
}

void write_generator_csv(std::ostream& os, const generators::Generator& g, int n) {
    if (n < 2) throw ConfigError("generator dump needs at least 2 samples");
    os << "factor,x,value\n";
    for (int k = 0; k < n; ++k) {
        const double x = g.wavelet.lo() + (g.wavelet.hi() - g.wavelet.lo()) * k / (n - 1);
        os << "wavelet," << number(x) << ',' << number(g.wavelet(x)) << '\n';
    }
    const double r = g.bump.radius();
    for (int k = 0; k < n; ++k) {
        const double x = -r + 2.0 * r * k / (n - 1);
        os << "bump," << number(x) << ',' << number(g.bump(x)) << '\n';
    }
}

}  // namespace shearlet::io
