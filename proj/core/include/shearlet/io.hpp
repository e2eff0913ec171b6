#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shearlet/common.hpp"
#include "shearlet/generators.hpp"
#include "shearlet/regions.hpp"
#include "shearlet/transform2d.hpp"
#include "shearlet/transform3d.hpp"

// JSON scenes, point lists and generator configs; CSV profile export. Every parse
// failure surfaces as ConfigError naming the offending field.
namespace shearlet::io {

struct NamedRegion2D {
    std::string name;
    regions::Region2D region;
};
struct NamedRegion3D {
    std::string name;
    regions::Region3D region;
};

struct Scene {
    std::vector<NamedRegion2D> regions2d;
    std::vector<NamedRegion3D> regions3d;

    const regions::Region2D* find2d(const std::string& name) const;
    const regions::Region3D* find3d(const std::string& name) const;
    std::vector<std::string> names() const;
};

Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::string& path);

struct QueryPoint {
    std::string region;  // scene region name; empty selects the only region
    std::vector<double> position;  // 2 or 3 entries
    std::optional<double> shear;   // 2D
    std::optional<Vec2> shear3d;   // 3D
    transform2d::Cone cone = transform2d::Cone::Horizontal;
    int pyramid = 1;
    std::string label;
};

std::vector<QueryPoint> parse_points(const std::string& json_text);
// A JSON file, or inline text "x,y[,z];x,y[,z];..."
std::vector<QueryPoint> load_points(const std::string& path_or_inline);

// {"dimension": 2, "preset": "default" | "detector", ...} or explicit factors
generators::Generator parse_generator(const std::string& json_text);
generators::Generator load_generator(const std::string& path);
generators::Generator default_generator(int dimension);

// "j0..j1" (dyadic 2^-j) or a comma list of scales
std::vector<double> parse_scales(const std::string& text);

void write_profile_csv(std::ostream& os, const transform2d::DecayProfile& p);
void write_profile_csv(std::ostream& os, const transform3d::DecayProfile& p);
// rows (factor, x, value): n samples of psi1 and of phi over their supports
void write_generator_csv(std::ostream& os, const generators::Generator& g, int n = 401);

std::string read_file(const std::string& path);
// %.15e rendering used by every numeric output
std::string number(double v);

}  // namespace shearlet::io
