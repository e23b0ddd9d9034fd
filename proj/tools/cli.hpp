#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace corrmate::cli {

struct RunConfig {
    std::string command;
    unsigned seed = 1;
    std::string out;  // JSON destination, stdout when empty

    int punctures = 1, order2 = 0, cone = 0;
    int d = 3;
    int half_order = 2;
    std::string domain_json;
    int max_period = 6;
    double multiplier_tol = 1e-8;

    std::string family = "bs";
    int depth = 8;
    double mesh_target = 1e-3;
    std::string sig1 = "3,0,3", sig2 = "2,1,4";

    int n = 2;
    std::vector<double> fixed;
    int unknown = 0;  // 0 means a_n
    double tolerance = 1e-8;
    double radius = 0.0;
    bool physical = false;

    std::string point;
    std::string out_dir = ".";
    int resolution = 512;
    double half_width = 3.0;
    double center_re = 0.0, center_im = 0.0;
    std::size_t cap = 100000;
    int orbit_depth = 64;
    double dedupe = 1e-9;
    double classify_dedupe = 1e-4;
    std::size_t classify_cap = 2000000;

    // ConfigError on out-of-range values.
    void validate() const;
};

// key=value lines, '#' starts a comment. ConfigError on malformed lines.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Runs one subcommand. Exit codes: 0 ok, 2 configuration error, 3 numeric failure.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace corrmate::cli
