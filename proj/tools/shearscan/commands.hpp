#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace shearscan {

struct RunSpec {
    std::string scene;
    std::string region;
    std::string generator;
    std::string points;
    std::string scales;
    std::string shear_grid;
    std::string out;
    int workers = 0;
    std::uint64_t seed = 20240601;
    std::string format = "csv";

    // transform / curvature
    std::string shear;
    std::string cone = "horizontal";
    int pyramid = 1;
    std::optional<double> beta;
    bool track = false;
    std::string dump_generator;
    int betas = 8;

    // frame
    std::int64_t mc_samples = 200000;
    std::string mc_xi = "8,1,1";
    std::string ray = "1,0.2,0.2";
    std::string ray_t = "8,16,32,64,128,256,512";
};

// Each returns the process exit code: 0, or 3 when some results did not converge
// (they are still written, flagged). Configuration problems throw ConfigError.
int cmd_transform(const RunSpec& spec);
int cmd_classify(const RunSpec& spec);
int cmd_curvature(const RunSpec& spec);
int cmd_frame(const RunSpec& spec);
int cmd_demo(const RunSpec& spec);

}  // namespace shearscan
