// Command-line front end.  Reads an input document, forwards everything to
// the shared-library job API, prints its output, and maps status codes to
// exit codes (0 ok, 1 verification failure / internal, 2 bad input).
#include "CLI11.hpp"
#include "latres.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Options {
    std::string input_path;
    std::string field = "q";
    std::string mode = "canonical-basis";
    std::string format = "json";
    std::string bound, radius_cap;
    std::string seed = "0", jobs = "1";
    std::vector<std::string> degrees;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("input", o.input_path, "input JSON file")->required();
    sub->add_option("--field", o.field, "coefficient field: q or fp:<p>");
    sub->add_option("--bound", o.bound, "exactness horizon (max d-degree to audit)");
    sub->add_option("--radius-cap", o.radius_cap,
                    "support enumeration cap (multiplier on the starting radius)");
    sub->add_option("--mode", o.mode, "basis mode: canonical-basis or community");
    sub->add_option("--seed", o.seed, "seed for the equivariance audit");
    sub->add_option("--jobs", o.jobs, "worker threads for the exactness audit");
    sub->add_option("--format", o.format, "output format: json or text");
    sub->add_option("--degree", o.degrees,
                    "degree window entry, comma-separated coordinates (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified minimal free resolutions of co-artinian lattice ideals"};
    app.require_subcommand(1);
    Options o;

    const std::pair<const char*, const char*> commands[] = {
        {"lattice", "certify a lattice basis; report grading and grading group"},
        {"koszul", "slice complex of the module at a degree"},
        {"betti", "betti numbers over the chosen field"},
        {"forest", "shrubberies, stake sets, and integer invariants"},
        {"primes", "primes where the field could change the answer, with provenance"},
        {"paths", "count/enumerate saturated decreasing lattice paths"},
        {"resolve", "equivariant minimal free resolution"},
        {"descend", "minimal free resolution with polynomial matrices"},
        {"verify", "resolve, descend, and audit the result"},
    };
    for (const auto& [name, desc] : commands) add_common(app.add_subcommand(name, desc), o);

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    std::ifstream in(o.input_path);
    if (!in) {
        std::fprintf(stderr, "error: cannot read %s\n", o.input_path.c_str());
        return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    latres_job* job = latres_job_new();
    if (!job) {
        std::fprintf(stderr, "error: out of memory\n");
        return 1;
    }
    latres_job_set_command(job, sub->get_name().c_str());
    latres_job_set_input(job, text.c_str());

    int bad = 0;
    auto set = [&](const char* key, const std::string& value) {
        if (latres_job_set_option(job, key, value.c_str())) {
            std::fprintf(stderr, "error: bad value for --%s: %s\n", key, value.c_str());
            bad = 1;
        }
    };
    set("field", o.field);
    set("mode", o.mode);
    set("format", o.format);
    set("seed", o.seed);
    set("jobs", o.jobs);
    if (!o.bound.empty()) set("bound", o.bound);
    if (!o.radius_cap.empty()) set("radius-cap", o.radius_cap);
    for (const auto& d : o.degrees) set("degree", d);
    if (bad) {
        latres_job_free(job);
        return 2;
    }

    const int status = latres_job_run(job);
    std::fputs(latres_job_output(job), stdout);
    const char* err = latres_job_error(job);
    if (err && *err) std::fprintf(stderr, "%s\n", err);
    latres_job_free(job);
    return status == LATRES_ERROR ? 1 : status;
}
