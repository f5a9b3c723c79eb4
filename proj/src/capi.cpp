#include "qdwalk/qdwalk_c.h"

#include "qdwalk/experiments.hpp"
#include "qdwalk/qarith.hpp"

#include <cstring>
#include <stdexcept>
#include <string>

struct qdw_run {
    qdwalk::RunResult result;
};

namespace {

thread_local std::string t_last_error;

int set_error(int code, const char* what) {
    t_last_error = what ? what : "unknown error";
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return set_error(QDW_ERR_USAGE, e.what());
    } catch (const std::domain_error& e) {
        return set_error(QDW_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return set_error(QDW_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(QDW_ERR_INTERNAL, "unknown exception");
    }
}

}  // namespace

extern "C" {

const char* qdw_version(void) { return qdwalk::kToolVersion; }

const char* qdw_last_error(void) { return t_last_error.c_str(); }

int qdw_run_create(const char* config_json, qdw_run** out) {
    if (!config_json || !out)
        return set_error(QDW_ERR_USAGE, "null argument to qdw_run_create");
    *out = nullptr;
    return guarded([&] {
        const auto parsed = nlohmann::json::parse(config_json, nullptr, false);
        if (parsed.is_discarded())
            return set_error(QDW_ERR_USAGE, "config is not valid JSON");
        auto config = qdwalk::ExperimentConfig::from_json(parsed);
        auto run = new qdw_run{qdwalk::run_experiment(config)};
        *out = run;
        t_last_error.clear();
        return QDW_OK;
    });
}

void qdw_run_destroy(qdw_run* run) { delete run; }

int qdw_run_passed(const qdw_run* run) {
    return run && run->result.passed ? 1 : 0;
}

const char* qdw_run_manifest(const qdw_run* run) {
    return run ? run->result.manifest.c_str() : "";
}

int qdw_run_file_count(const qdw_run* run, size_t* count) {
    if (!run || !count) return set_error(QDW_ERR_USAGE, "null argument");
    *count = run->result.files.size();
    return QDW_OK;
}

int qdw_run_file_name(const qdw_run* run, size_t index, const char** name) {
    if (!run || !name) return set_error(QDW_ERR_USAGE, "null argument");
    if (index >= run->result.files.size())
        return set_error(QDW_ERR_RANGE, "file index out of range");
    *name = run->result.files[index].name.c_str();
    return QDW_OK;
}

int qdw_run_file_content(const qdw_run* run, size_t index, const char** data,
                         size_t* size) {
    if (!run || !data || !size) return set_error(QDW_ERR_USAGE, "null argument");
    if (index >= run->result.files.size())
        return set_error(QDW_ERR_RANGE, "file index out of range");
    *data = run->result.files[index].content.c_str();
    *size = run->result.files[index].content.size();
    return QDW_OK;
}

int qdw_q_int(int n, const char* q, char* buf, size_t buflen) {
    if (!q || !buf || buflen == 0)
        return set_error(QDW_ERR_USAGE, "null argument to qdw_q_int");
    return guarded([&] {
        const auto param = qdwalk::QParam::parse(q);
        const std::string value = qdwalk::q_int(n, param).str();
        if (value.size() + 1 > buflen)
            return set_error(QDW_ERR_RANGE, "buffer too small");
        std::memcpy(buf, value.c_str(), value.size() + 1);
        t_last_error.clear();
        return QDW_OK;
    });
}

}  // extern "C"
