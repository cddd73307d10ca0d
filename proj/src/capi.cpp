#include "latres.h"

#include "latres/engine.hpp"

#include <cstdlib>
#include <string>

struct latres_job {
    latres::JobConfig cfg;
    latres::JobResult result;
};

namespace {

bool parse_u64(const std::string& s, std::uint64_t& out) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return false;
    try {
        std::size_t pos = 0;
        out = std::stoull(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_degree(const std::string& s, latres::Vec& out) {
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string tok = s.substr(start, comma == std::string::npos ? comma : comma - start);
        // trim spaces
        const std::size_t a = tok.find_first_not_of(" \t");
        if (a == std::string::npos) return false;
        const std::size_t b = tok.find_last_not_of(" \t");
        tok = tok.substr(a, b - a + 1);
        try {
            std::size_t pos = 0;
            const long v = std::stol(tok, &pos);
            if (pos != tok.size()) return false;
            out.push_back(latres::Int(v));
        } catch (...) {
            return false;
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return !out.empty();
}

}  // namespace

extern "C" {

latres_job* latres_job_new(void) {
    try {
        return new latres_job();
    } catch (...) {
        return nullptr;
    }
}

void latres_job_free(latres_job* job) { delete job; }

void latres_job_set_command(latres_job* job, const char* command) {
    if (job && command) job->cfg.command = command;
}

void latres_job_set_input(latres_job* job, const char* json_text) {
    if (job && json_text) job->cfg.input_json = json_text;
}

int latres_job_set_option(latres_job* job, const char* key, const char* value) {
    if (!job || !key || !value) return 1;
    const std::string k = key;
    const std::string v = value;
    try {
        if (k == "field") {
            job->cfg.field = v;
            return 0;
        }
        if (k == "mode") {
            job->cfg.mode = v;
            return 0;
        }
        if (k == "format") {
            job->cfg.format = v;
            return 0;
        }
        if (k == "bound") {
            job->cfg.bound = latres::Int(v);  // throws on junk
            return 0;
        }
        if (k == "radius-cap") {
            job->cfg.radius_cap = latres::Int(v);
            return 0;
        }
        if (k == "seed") {
            return parse_u64(v, job->cfg.seed) ? 0 : 1;
        }
        if (k == "jobs") {
            std::uint64_t j = 0;
            if (!parse_u64(v, j) || j == 0) return 1;
            job->cfg.jobs = static_cast<std::size_t>(j);
            return 0;
        }
        if (k == "degree") {
            latres::Vec d;
            if (!parse_degree(v, d)) return 1;
            job->cfg.degrees.push_back(std::move(d));
            return 0;
        }
        return 1;
    } catch (...) {
        return 1;
    }
}

int latres_job_run(latres_job* job) {
    if (!job) return LATRES_ERROR;
    try {
        job->result = latres::run_job(job->cfg);
    } catch (...) {
        job->result = {LATRES_ERROR, "", "internal error"};
    }
    return job->result.status;
}

const char* latres_job_output(const latres_job* job) {
    return job ? job->result.output.c_str() : "";
}

const char* latres_job_error(const latres_job* job) {
    return job ? job->result.error.c_str() : "";
}

const char* latres_version(void) { return "0.1.0"; }

}  // extern "C"
