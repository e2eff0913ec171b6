#include <fmt/format.h>
#include <tbb/global_control.h>

#include <CLI11.hpp>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "shearlet/common.hpp"

namespace {

void common_options(CLI::App* cmd, shearscan::RunSpec& spec, bool needs_scene) {
    if (needs_scene) {
        cmd->add_option("--scene", spec.scene, "scene JSON file")->required();
        cmd->add_option("--points", spec.points, "points JSON file or inline \"x,y;x,y\"")->required();
        cmd->add_option("--region", spec.region, "region used by points that do not name one");
        cmd->add_option("--scales", spec.scales, "\"j0..j1\" (a = 2^-j) or a comma list");
        cmd->add_option("--shear-grid", spec.shear_grid, "transform: lo:hi:n; classify: n or max:n");
    }
    cmd->add_option("--generator", spec.generator, "generator JSON file (default generator otherwise)");
    cmd->add_option("--out", spec.out, "output directory (stdout when omitted)");
    cmd->add_option("--workers", spec.workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", spec.seed, "seed for randomized estimates");
    cmd->add_option("--format", spec.format, "table format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    shearscan::RunSpec spec;
    CLI::App app{"shearscan: continuous shearlet analysis of piecewise-smooth regions"};
    app.require_subcommand(1);

    auto* transform = app.add_subcommand("transform", "coefficient decay profiles at query points");
    common_options(transform, spec, true);
    transform->add_option("--shear", spec.shear, "shear (2D: s, 3D: s1,s2) for points without one");
    transform->add_option("--cone", spec.cone, "2D cone")->check(CLI::IsMember({"horizontal", "vertical"}));
    transform->add_option("--pyramid", spec.pyramid, "3D pyramid 1..3")->check(CLI::Range(1, 3));
    transform->add_option("--beta", spec.beta, "3D needle rotation angle");
    transform->add_flag("--track", spec.track, "follow the odd-response null across scales (2D)");
    transform->add_option("--dump-generator", spec.dump_generator, "write sampled generator factors to this CSV");

    auto* classify = app.add_subcommand("classify", "boundary classification of query points");
    common_options(classify, spec, true);
    classify->add_option("--shear", spec.shear, "examine only this orientation");
    classify->add_option("--cone", spec.cone, "2D cone")->check(CLI::IsMember({"horizontal", "vertical"}));
    classify->add_option("--pyramid", spec.pyramid, "3D pyramid 1..3")->check(CLI::Range(1, 3));

    auto* curvature = app.add_subcommand("curvature", "curvature estimates at regular boundary points");
    common_options(curvature, spec, true);
    curvature->add_option("--shear", spec.shear, "aligned shear (2D: scanned when omitted)");
    curvature->add_option("--cone", spec.cone, "2D cone")->check(CLI::IsMember({"horizontal", "vertical"}));
    curvature->add_option("--beta", spec.beta, "single needle angle (3D)");
    curvature->add_option("--betas", spec.betas, "needle angles k pi / N, k < N (3D)")->check(CLI::PositiveNumber);

    auto* frame = app.add_subcommand("frame", "admissibility constant, frame bounds and window decay");
    common_options(frame, spec, false);
    frame->add_option("--mc-samples", spec.mc_samples, "Monte-Carlo samples for the cross-check (0 disables)");
    frame->add_option("--mc-xi", spec.mc_xi, "frequency of the Monte-Carlo cross-check");
    frame->add_option("--ray", spec.ray, "direction of the window-decay ray");
    frame->add_option("--ray-t", spec.ray_t, "radii along the ray");

    auto* demo = app.add_subcommand("demo", "built-in scenes end to end");
    demo->add_option("--out", spec.out, "output directory (stdout when omitted)");
    demo->add_option("--workers", spec.workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    demo->add_option("--format", spec.format, "table format")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::unique_ptr<tbb::global_control> threads;
    if (spec.workers > 0)
        threads = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism,
                                                        static_cast<std::size_t>(spec.workers));
    try {
        if (*transform) return shearscan::cmd_transform(spec);
        if (*classify) return shearscan::cmd_classify(spec);
        if (*curvature) return shearscan::cmd_curvature(spec);
        if (*frame) return shearscan::cmd_frame(spec);
        return shearscan::cmd_demo(spec);
    } catch (const shearlet::ConfigError& e) {
        std::cerr << fmt::format("shearscan: configuration error: {}\n", e.what());
        return 2;
    } catch (const shearlet::NumericalError& e) {
        std::cerr << fmt::format("shearscan: numerical failure: {}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::cerr << fmt::format("shearscan: error: {}\n", e.what());
        return 1;
    }
}
