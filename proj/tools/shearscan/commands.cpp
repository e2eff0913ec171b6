#include "commands.hpp"

#include <fmt/format.h>
#include <tbb/parallel_for.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

#include "demo_scenes.hpp"
#include "shearlet/classify.hpp"
#include "shearlet/frames.hpp"
#include "shearlet/io.hpp"
#include "table.hpp"

namespace shearscan {

using namespace shearlet;
using json = nlohmann::ordered_json;
using transform2d::Cone;

namespace {

// ---------------------------------------------------------------- inputs

struct Inputs {
    io::Scene scene;
    std::vector<io::QueryPoint> points;
    int dimension = 2;
};

std::vector<double> numbers(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(what + ": cannot read '" + item + "' as a number");
        }
    }
    if (out.empty()) throw ConfigError(what + ": empty list");
    return out;
}

Cone parse_cone(const std::string& c) {
    if (c == "horizontal") return Cone::Horizontal;
    if (c == "vertical") return Cone::Vertical;
    throw ConfigError("cone must be 'horizontal' or 'vertical'");
}

std::string cone_name(Cone c) { return c == Cone::Horizontal ? "horizontal" : "vertical"; }

Inputs resolve(const io::Scene& scene, std::vector<io::QueryPoint> points, const RunSpec& spec) {
    Inputs in{scene, std::move(points), 2};
    in.dimension = static_cast<int>(in.points.front().position.size());
    for (std::size_t i = 0; i < in.points.size(); ++i) {
        auto& p = in.points[i];
        if (static_cast<int>(p.position.size()) != in.dimension)
            throw ConfigError("points: all points must have the same dimension");
        if (p.region.empty()) p.region = spec.region;
        if (p.region.empty() && in.scene.names().size() == 1) p.region = in.scene.names().front();
        const bool found = in.dimension == 2 ? in.scene.find2d(p.region) != nullptr : in.scene.find3d(p.region) != nullptr;
        if (!found)
            throw ConfigError(p.region.empty()
                                  ? fmt::format("point {}: the scene has several regions; name one with --region", i)
                                  : fmt::format("point {}: no {}D region named '{}' in the scene", i, in.dimension,
                                                p.region));
        if (p.label.empty()) p.label = fmt::format("p{}", i);
    }
    return in;
}

Inputs load_inputs(const RunSpec& spec) {
    if (spec.scene.empty()) throw ConfigError("--scene is required");
    if (spec.points.empty()) throw ConfigError("--points is required");
    const io::Scene scene = io::load_scene(spec.scene);
    return resolve(scene, io::load_points(spec.points), spec);
}

generators::Generator load_generator(const RunSpec& spec, int dimension) {
    generators::Generator g = spec.generator.empty() ? io::default_generator(dimension) : io::load_generator(spec.generator);
    if (g.dimension != dimension)
        throw ConfigError(fmt::format("generator is {}D but the points are {}D", g.dimension, dimension));
    return g;
}

Vec2 point2(const io::QueryPoint& p) { return {p.position[0], p.position[1]}; }
Vec3 point3(const io::QueryPoint& p) { return {p.position[0], p.position[1], p.position[2]}; }

std::optional<double> cli_shear2(const RunSpec& spec) {
    if (spec.shear.empty()) return std::nullopt;
    const auto v = numbers(spec.shear, "--shear");
    if (v.size() != 1) throw ConfigError("--shear: a 2D run takes one value");
    return v[0];
}

std::optional<Vec2> cli_shear3(const RunSpec& spec) {
    if (spec.shear.empty()) return std::nullopt;
    const auto v = numbers(spec.shear, "--shear");
    if (v.size() != 2) throw ConfigError("--shear: a 3D run takes two values s1,s2");
    return Vec2(v[0], v[1]);
}

// "lo:hi:n" -> n evenly spaced values
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(numbers(item, "--shear-grid").front());
    if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2]) || !(parts[0] <= parts[1]))
        throw ConfigError("--shear-grid: expected lo:hi:n with lo <= hi and integer n >= 1");
    const int n = static_cast<int>(parts[2]);
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(n == 1 ? parts[0] : parts[0] + (parts[1] - parts[0]) * k / (n - 1));
    return out;
}

classify::ClassifierConfig classifier_config(const RunSpec& spec) {
    classify::ClassifierConfig cfg;
    if (!spec.scales.empty()) cfg.scales2d = cfg.scales3d = io::parse_scales(spec.scales);
    if (!spec.shear_grid.empty()) {
        // "n" or "max:n"
        const auto colon = spec.shear_grid.find(':');
        const double n = numbers(colon == std::string::npos ? spec.shear_grid : spec.shear_grid.substr(colon + 1),
                                 "--shear-grid")
                             .front();
        if (n < 2 || n != std::floor(n)) throw ConfigError("--shear-grid: the point count must be an integer >= 2");
        cfg.shear_points = cfg.shear_points3d = static_cast<int>(n);
        if (colon != std::string::npos)
            cfg.shear_max = cfg.shear_max3d = numbers(spec.shear_grid.substr(0, colon), "--shear-grid").front();
    }
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------- output

class Output {
public:
    Output(std::string dir, std::string format) : dir_(std::move(dir)), format_(std::move(format)) {}
    bool to_files() const { return !dir_.empty(); }
    const std::string& format() const { return format_; }

    void open() const {
        if (to_files()) std::filesystem::create_directories(dir_);
    }
    // main table: file when an output directory is set, stdout otherwise
    void table(const std::string& stem, const Table& t) const {
        if (!to_files()) {
            t.write(std::cout, format_);
            return;
        }
        std::ofstream os(path(stem + (format_ == "json" ? ".json" : ".csv")));
        t.write(os, format_);
    }
    template <class Writer>
    void file(const std::string& name, Writer&& w) const {
        if (!to_files()) return;
        std::ofstream os(path(name));
        w(os);
    }
    void json_doc(const std::string& name, const json& doc) const {
        if (!to_files()) {
            std::cout << doc.dump(2) << '\n';
            return;
        }
        std::ofstream os(path(name));
        os << doc.dump(2) << '\n';
    }
    Output sub(const std::string& name) const { return {to_files() ? path(name) : std::string(), format_}; }

private:
    std::string path(const std::string& name) const { return (std::filesystem::path(dir_) / name).string(); }
    std::string dir_;
    std::string format_;
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class Fn>
void for_each_index(std::size_t n, Fn&& fn) {
    tbb::parallel_for(std::size_t{0}, n, [&](std::size_t i) { fn(i); });
}

// ---------------------------------------------------------------- transform

int run_transform(const Inputs& in, const generators::Generator& gen, const RunSpec& spec, const Output& out) {
    const bool d2 = in.dimension == 2;
    const std::vector<double> scales =
        spec.scales.empty() ? (d2 ? transform2d::dyadic_scales(4, 9) : transform2d::dyadic_scales(3, 7))
                            : io::parse_scales(spec.scales);
    if (spec.beta && d2) throw ConfigError("--beta selects the 3D needle transform");
    if (spec.track && !d2) throw ConfigError("--track applies to 2D points");
    if (spec.pyramid < 1 || spec.pyramid > 3) throw ConfigError("--pyramid must be 1, 2 or 3");
    const Cone cli_cone = parse_cone(spec.cone);

    struct Task {
        std::size_t point;
        double s;
        Vec2 s3;
    };
    std::vector<Task> tasks;
    const std::vector<double> grid = spec.shear_grid.empty() ? std::vector<double>{} : parse_grid(spec.shear_grid);
    for (std::size_t i = 0; i < in.points.size(); ++i) {
        const auto& p = in.points[i];
        if (d2) {
            const double s0 = p.shear.value_or(cli_shear2(spec).value_or(0.0));
            if (grid.empty()) tasks.push_back({i, s0, {}});
            for (double s : grid) tasks.push_back({i, s, {}});
        } else {
            const Vec2 s0 = p.shear3d.value_or(cli_shear3(spec).value_or(Vec2(0, 0)));
            if (grid.empty()) tasks.push_back({i, 0, s0});
            for (double s1 : grid)
                for (double s2 : grid) tasks.push_back({i, 0, Vec2(s1, s2)});
        }
    }

    std::vector<transform2d::DecayProfile> prof2(d2 ? tasks.size() : 0);
    std::vector<transform3d::DecayProfile> prof3(d2 ? 0 : tasks.size());
    for_each_index(tasks.size(), [&](std::size_t k) {
        const Task& t = tasks[k];
        const auto& p = in.points[t.point];
        if (d2) {
            const auto policy = spec.track ? transform2d::ShearPolicy::TrackOddNull : transform2d::ShearPolicy::Fixed;
            const Cone cone = p.cone != Cone::Horizontal ? p.cone : cli_cone;
            prof2[k] = transform2d::decay_profile2d(*in.scene.find2d(p.region), gen, point2(p), policy, t.s, scales, cone);
        } else if (spec.beta) {
            prof3[k] = transform3d::needle_profile(*in.scene.find3d(p.region), gen, point3(p), t.s3, *spec.beta, scales);
        } else {
            const int d = p.pyramid != 1 ? p.pyramid : spec.pyramid;
            prof3[k] = transform3d::decay_profile3d(*in.scene.find3d(p.region), gen, point3(p), t.s3, scales, d);
        }
    });

    Table table;
    if (d2) table.columns = {"point", "label", "region", "x", "y", "cone", "shear", "a", "coefficient", "converged", "grid_n"};
    else table.columns = {"point", "label", "region", "x", "y", "z", "pyramid", "s1", "s2", "beta", "a",
                          "coefficient", "converged", "grid_n"};
    bool failed = false;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        const auto& p = in.points[tasks[k].point];
        const auto idx = static_cast<std::int64_t>(tasks[k].point);
        if (d2) {
            for (const auto& e : prof2[k].entries) {
                failed = failed || !e.valid;
                table.add({idx, p.label, p.region, p.position[0], p.position[1], cone_name(prof2[k].cone), e.s, e.a,
                           e.valid ? e.value : NAN, std::int64_t{e.valid}, std::int64_t{e.panels}});
            }
        } else {
            const auto& pr = prof3[k];
            for (const auto& e : pr.entries) {
                failed = failed || !e.valid;
                table.add({idx, p.label, p.region, p.position[0], p.position[1], p.position[2],
                           std::int64_t{pr.pyramid}, pr.shear.x(), pr.shear.y(), pr.needle ? pr.beta : NAN, e.a,
                           e.valid ? e.value : NAN, std::int64_t{e.valid}, std::int64_t{e.panels}});
            }
        }
    }
    out.open();
    out.table("coefficients", table);
    for (std::size_t k = 0; k < tasks.size(); ++k)
        out.file(fmt::format("profile_{:03d}.csv", k), [&](std::ostream& os) {
            if (d2) io::write_profile_csv(os, prof2[k]);
            else io::write_profile_csv(os, prof3[k]);
        });
    if (!spec.dump_generator.empty()) {
        std::ofstream os(spec.dump_generator);
        if (!os) throw ConfigError("cannot write '" + spec.dump_generator + "'");
        io::write_generator_csv(os, gen);
    }
    if (failed) std::cerr << "shearscan: some coefficients did not converge (converged = 0 rows)\n";
    return failed ? 3 : 0;
}

// ---------------------------------------------------------------- classify

struct Classified {
    classify::PointClassification result;
    std::string curvature_note;
};

json report_json(std::size_t i, const io::QueryPoint& p, const Classified& c) {
    const auto& r = c.result;
    json j;
    j["index"] = i;
    j["label"] = p.label;
    j["region"] = p.region;
    j["point"] = p.position;
    j["verdict"] = classify::to_string(r.verdict);
    if (r.shear) {
        j["shear"] = *r.shear;
        j["cone"] = cone_name(r.cone);
    } else if (r.shear3d) {
        j["shear"] = {r.shear3d->x(), r.shear3d->y()};
        j["pyramid"] = r.pyramid;
    } else {
        j["shear"] = nullptr;
    }
    if (r.normal2d) j["normal"] = {r.normal2d->x(), r.normal2d->y()};
    else if (r.normal3d) j["normal"] = {r.normal3d->x(), r.normal3d->y(), r.normal3d->z()};
    else j["normal"] = nullptr;
    j["exponent"] = number_or_null(r.fit.slope);
    j["r2"] = number_or_null(r.fit.r2);
    j["limit"] = number_or_null(r.fit.limit);
    json ex = json::array();
    for (double e : r.exponents) ex.push_back(number_or_null(e));
    j["exponents"] = ex;
    j["curvature"] = r.curvature ? json(*r.curvature) : json(nullptr);
    j["reason"] = r.reason;
    json diag = r.diagnostics;
    if (!c.curvature_note.empty()) diag.push_back(c.curvature_note);
    j["diagnostics"] = diag;
    return j;
}

int run_classify(const Inputs& in, const generators::Generator& gen, const RunSpec& spec, const Output& out) {
    const classify::ClassifierConfig cfg = classifier_config(spec);
    const bool d2 = in.dimension == 2;
    std::unique_ptr<generators::WedgeTable> table2;
    if (d2) table2 = std::make_unique<generators::WedgeTable>(gen, cfg.curvature_nu);
    const std::optional<double> s2 = d2 ? cli_shear2(spec) : std::nullopt;
    const std::optional<Vec2> s3 = d2 ? std::nullopt : cli_shear3(spec);

    std::vector<Classified> res(in.points.size());
    for_each_index(in.points.size(), [&](std::size_t i) {
        const auto& p = in.points[i];
        Classified& c = res[i];
        if (d2) {
            const auto shear = p.shear ? p.shear : s2;
            const Cone cone = p.cone != Cone::Horizontal ? p.cone : parse_cone(spec.cone);
            c.result = classify::classify2d(*in.scene.find2d(p.region), gen, point2(p), cfg, shear, cone);
            if (c.result.verdict == classify::Verdict::RegularAligned && c.result.shear) {
                try {
                    const auto est = classify::estimate_curvature2d(*in.scene.find2d(p.region), gen, point2(p),
                                                                    *c.result.shear, *table2, c.result.cone);
                    c.result.curvature = est.curvature;
                } catch (const NumericalError& e) {
                    c.curvature_note = std::string("curvature unavailable: ") + e.what();
                }
            }
        } else {
            const auto shear = p.shear3d ? p.shear3d : s3;
            const int d = p.pyramid != 1 ? p.pyramid : spec.pyramid;
            c.result = classify::classify3d(*in.scene.find3d(p.region), gen, point3(p), cfg, shear, d);
        }
    });

    Table summary;
    summary.columns = {"point", "label", "region", "verdict", "exponent", "limit", "shear", "curvature"};
    for (std::size_t i = 0; i < res.size(); ++i) {
        const auto& r = res[i].result;
        std::string shear;
        if (r.shear) shear = render(*r.shear);
        else if (r.shear3d) shear = render(r.shear3d->x()) + " " + render(r.shear3d->y());
        summary.add({static_cast<std::int64_t>(i), in.points[i].label, in.points[i].region, classify::to_string(r.verdict),
                     r.fit.slope, r.fit.limit, shear, r.curvature ? *r.curvature : NAN});
    }
    out.open();
    out.table("summary", summary);
    for (std::size_t i = 0; i < res.size(); ++i)
        out.file(fmt::format("report_{:03d}.json", i),
                 [&](std::ostream& os) { os << report_json(i, in.points[i], res[i]).dump(2) << '\n'; });
    return 0;
}

// ---------------------------------------------------------------- curvature

int run_curvature(const Inputs& in, const generators::Generator& gen, const RunSpec& spec, const Output& out) {
    const bool d2 = in.dimension == 2;
    const classify::ClassifierConfig cfg = classifier_config(spec);
    if (spec.betas < 1) throw ConfigError("--betas must be at least 1");
    const std::optional<std::vector<double>> scales =
        spec.scales.empty() ? std::nullopt : std::optional(io::parse_scales(spec.scales));
    Table table;
    bool failed = false;

    if (d2) {
        const generators::WedgeTable wt(gen, cfg.curvature_nu);
        const std::optional<double> s_cli = cli_shear2(spec);
        struct Row {
            double shear = NAN, kappa = NAN, limit = NAN, wedge = NAN;
            Cone cone = Cone::Horizontal;
            std::string status = "ok";
        };
        std::vector<Row> rows(in.points.size());
        for_each_index(in.points.size(), [&](std::size_t i) {
            const auto& p = in.points[i];
            const auto& region = *in.scene.find2d(p.region);
            Row& r = rows[i];
            try {
                std::optional<double> s = p.shear ? p.shear : s_cli;
                r.cone = p.cone != Cone::Horizontal ? p.cone : parse_cone(spec.cone);
                if (!s) {
                    const auto scan = classify::orientation_scan2d(region, gen, point2(p), cfg);
                    if (!scan.best_shear) throw NumericalError("no aligned orientation found");
                    s = scan.best_shear;
                    r.cone = scan.best_cone;
                }
                const auto est = scales ? classify::estimate_curvature2d(region, gen, point2(p), *s, wt, r.cone, *scales)
                                        : classify::estimate_curvature2d(region, gen, point2(p), *s, wt, r.cone);
                r.shear = est.shear, r.kappa = est.curvature, r.limit = est.limit, r.wedge = est.wedge_parameter;
            } catch (const NumericalError& e) {
                r.status = e.what();
            }
        });
        table.columns = {"point", "label", "region", "x", "y", "cone", "shear", "curvature", "limit", "wedge_parameter",
                         "status"};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& p = in.points[i];
            const auto& r = rows[i];
            failed = failed || r.status != "ok";
            table.add({static_cast<std::int64_t>(i), p.label, p.region, p.position[0], p.position[1], cone_name(r.cone),
                       r.shear, r.kappa, r.limit, r.wedge, r.status});
        }
    } else {
        const generators::WedgeTable wt(gen, cfg.curvature_nu, 81, generators::WedgeTable::Kind::Needle);
        const std::optional<Vec2> s_cli = cli_shear3(spec);
        struct Row {
            std::size_t point;
            Vec2 s;
            double beta;
            Vec3 dir;
            double kappa = NAN, limit = NAN;
            std::string status = "ok";
        };
        std::vector<Row> rows;
        for (std::size_t i = 0; i < in.points.size(); ++i) {
            const Vec2 s = in.points[i].shear3d.value_or(s_cli.value_or(Vec2(0, 0)));
            std::vector<double> betas;
            if (spec.beta) betas = {*spec.beta};
            else
                for (int k = 0; k < spec.betas; ++k) betas.push_back(pi * k / spec.betas);
            for (double b : betas) rows.push_back({i, s, b, classify::needle_direction(s, b)});
        }
        for_each_index(rows.size(), [&](std::size_t k) {
            Row& r = rows[k];
            const auto& p = in.points[r.point];
            try {
                const auto est =
                    scales ? classify::directional_curvature3d(*in.scene.find3d(p.region), gen, point3(p), r.s, r.beta,
                                                               wt, *scales)
                           : classify::directional_curvature3d(*in.scene.find3d(p.region), gen, point3(p), r.s, r.beta, wt);
                r.kappa = est.curvature, r.limit = est.limit;
            } catch (const NumericalError& e) {
                r.status = e.what();
            }
        });
        table.columns = {"point", "label", "region", "x", "y", "z", "s1", "s2", "beta", "dir_x", "dir_y", "dir_z",
                         "curvature", "limit", "status"};
        for (const Row& r : rows) {
            const auto& p = in.points[r.point];
            failed = failed || r.status != "ok";
            table.add({static_cast<std::int64_t>(r.point), p.label, p.region, p.position[0], p.position[1],
                       p.position[2], r.s.x(), r.s.y(), r.beta, r.dir.x(), r.dir.y(), r.dir.z(), r.kappa, r.limit,
                       r.status});
        }
    }
    out.open();
    out.table("curvature", table);
    if (failed) std::cerr << "shearscan: some curvature estimates failed (see the status column)\n";
    return failed ? 3 : 0;
}

// ---------------------------------------------------------------- frame

Vec3 vec3_arg(const std::string& text, const std::string& what) {
    const auto v = numbers(text, what);
    if (v.size() != 3) throw ConfigError(what + ": expected three values");
    return {v[0], v[1], v[2]};
}

int run_frame(const RunSpec& spec, const Output& out) {
    const generators::Generator gen = spec.generator.empty() ? io::default_generator(3) : io::load_generator(spec.generator);
    frames::FrameConfig cfg;
    cfg.validate();
    if (spec.mc_samples != 0 && spec.mc_samples < 1000) throw ConfigError("--mc-samples must be 0 or at least 1000");
    const Vec3 mc_xi = vec3_arg(spec.mc_xi, "--mc-xi");
    const Vec3 ray = vec3_arg(spec.ray, "--ray");
    const std::vector<double> ts = numbers(spec.ray_t, "--ray-t");

    json doc;
    doc["dimension"] = gen.dimension;
    doc["config"] = {{"gamma", cfg.gamma}, {"xi", cfg.xi}, {"u", cfg.u}, {"v", cfg.v}, {"w", cfg.w},
                     {"rtol", cfg.rtol}, {"tail_rel", cfg.tail_rel}};
    if (gen.dimension == 2) {
        doc["c_psi"] = frames::admissibility_2d(gen, cfg);
        out.open();
        out.json_doc("frame_report.json", doc);
        return 0;
    }
    const frames::FrameReport rep = frames::frame_report(gen, cfg);
    doc["c_psi"] = {{"direct", rep.c_direct}, {"group", rep.c_group}, {"relative_gap", rep.relative_gap}};
    doc["frame_bounds"] = {{"A", rep.bounds.lower},
                           {"B", rep.bounds.upper},
                           {"argmin", {rep.bounds.argmin.x(), rep.bounds.argmin.y(), rep.bounds.argmin.z()}},
                           {"argmax", {rep.bounds.argmax.x(), rep.bounds.argmax.y(), rep.bounds.argmax.z()}},
                           {"points", rep.bounds.points}};
    doc["grid"] = {{"radii", cfg.grid.radii}, {"slopes", cfg.grid.slopes}, {"both_signs", cfg.grid.both_signs}};
    const frames::Spectrum sp(gen, cfg);
    if (spec.mc_samples > 0) {
        const double d = frames::delta_multiplier(sp, mc_xi, cfg);
        const auto mc = frames::delta_monte_carlo(gen, mc_xi, cfg, spec.mc_samples, spec.seed);
        doc["monte_carlo"] = {{"xi", {mc_xi.x(), mc_xi.y(), mc_xi.z()}},
                              {"delta", d},
                              {"estimate", mc.value},
                              {"std_error", mc.std_error},
                              {"samples", mc.samples},
                              {"seed", spec.seed}};
    }
    const auto decay = frames::window_decay(sp, rep.c_direct, ray, ts, cfg);
    doc["ray"] = {{"direction", {ray.x(), ray.y(), ray.z()}}, {"window_decay_slope", number_or_null(decay.slope)}};
    json warnings = rep.warnings;
    for (const auto& s : decay.samples)
        if (s.window < -0.01 * rep.c_direct)
            warnings.push_back(fmt::format("window spectrum negative beyond tolerance at t = {}", s.t));
    doc["warnings"] = warnings;

    Table rays;
    rays.columns = {"t", "xi1", "xi2", "xi3", "delta", "window", "complement"};
    for (const auto& s : decay.samples)
        rays.add({s.t, s.frequency.x(), s.frequency.y(), s.frequency.z(), s.delta, s.window, s.complement});
    out.open();
    out.json_doc("frame_report.json", doc);
    if (out.to_files()) out.table("ray", rays);
    return 0;
}

}  // namespace

// ---------------------------------------------------------------- entry points

int cmd_transform(const RunSpec& spec) {
    const Inputs in = load_inputs(spec);
    return run_transform(in, load_generator(spec, in.dimension), spec, Output(spec.out, spec.format));
}

int cmd_classify(const RunSpec& spec) {
    const Inputs in = load_inputs(spec);
    return run_classify(in, load_generator(spec, in.dimension), spec, Output(spec.out, spec.format));
}

int cmd_curvature(const RunSpec& spec) {
    const Inputs in = load_inputs(spec);
    return run_curvature(in, load_generator(spec, in.dimension), spec, Output(spec.out, spec.format));
}

int cmd_frame(const RunSpec& spec) { return run_frame(spec, Output(spec.out, spec.format)); }

int cmd_demo(const RunSpec& spec) {
    const Output out(spec.out, spec.format);
    const io::Scene scene2 = io::parse_scene(std::string(demo_scene("demo2d")));
    const io::Scene scene3 = io::parse_scene(std::string(demo_scene("demo3d")));
    const Inputs pts2 = resolve(scene2, io::parse_points(std::string(demo_scene("demo2d_points"))), spec);
    const Inputs pts3 = resolve(scene3, io::parse_points(std::string(demo_scene("demo3d_points"))), spec);
    const auto g2 = io::default_generator(2), g3 = io::default_generator(3);
    RunSpec plain = spec;
    plain.shear.clear();
    plain.scales.clear();
    plain.shear_grid.clear();

    int rc = 0;
    if (!out.to_files()) std::cout << "# 2D classification\n";
    rc = std::max(rc, run_classify(pts2, g2, plain, out.sub("classify2d")));

    const Inputs disks = resolve(scene2, io::parse_points(R"({"points": [
        {"region": "disk", "position": [1, 0], "shear": 0, "label": "disk-r1"},
        {"region": "disk2", "position": [2, 0], "shear": 0, "label": "disk-r2"}]})"),
                                 spec);
    if (!out.to_files()) std::cout << "# 2D curvature\n";
    rc = std::max(rc, run_curvature(disks, g2, plain, out.sub("curvature2d")));

    if (!out.to_files()) std::cout << "# 3D classification\n";
    rc = std::max(rc, run_classify(pts3, g3, plain, out.sub("classify3d")));

    const Inputs ball = resolve(scene3, io::parse_points(R"({"points": [
        {"region": "ball", "position": [1, 0, 0], "shear": [0, 0], "label": "ball"}]})"),
                                spec);
    if (!out.to_files()) std::cout << "# 3D needle curvature\n";
    rc = std::max(rc, run_curvature(ball, g3, plain, out.sub("curvature3d")));
    return rc;
}

}  // namespace shearscan
