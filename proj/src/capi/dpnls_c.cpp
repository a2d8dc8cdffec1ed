#include "dpnls.h"

#include <sstream>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/driver.hpp"

namespace {

struct Session {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string last_output;
  std::string last_error;
  std::string config_text;
};

Session* unwrap(dpnls_session* s) { return reinterpret_cast<Session*>(s); }
const Session* unwrap(const dpnls_session* s) {
  return reinterpret_cast<const Session*>(s);
}

}  // namespace

extern "C" {

dpnls_session* dpnls_session_create(void) {
  return reinterpret_cast<dpnls_session*>(new Session());
}

void dpnls_session_destroy(dpnls_session* s) { delete unwrap(s); }

dpnls_status dpnls_load_config(dpnls_session* s, const char* path) {
  Session* ss = unwrap(s);
  if (!ss) return DPNLS_ERR_INVALID_ARG;
  ss->config_path = path ? path : "";
  ss->last_error.clear();
  return DPNLS_OK;
}

dpnls_status dpnls_set_option(dpnls_session* s, const char* kv) {
  Session* ss = unwrap(s);
  if (!ss || !kv) return DPNLS_ERR_INVALID_ARG;
  std::string v(kv);
  if (v.find('=') == std::string::npos) {
    if (ss) ss->last_error = "option must be key=value: " + v;
    return DPNLS_ERR_INVALID_ARG;
  }
  ss->overrides.push_back(std::move(v));
  ss->last_error.clear();
  return DPNLS_OK;
}

dpnls_status dpnls_run(dpnls_session* s, const char* command) {
  Session* ss = unwrap(s);
  if (!ss || !command) return DPNLS_ERR_INVALID_ARG;
  ss->last_error.clear();
  dpnls::Config cfg;
  try {
    cfg = dpnls::parse_config(ss->config_path, ss->overrides);
  } catch (const std::exception& e) {
    ss->last_error = e.what();
    return DPNLS_ERR_CONFIG;
  }
  try {
    std::ostringstream log;
    int rc = dpnls::run_command(command, cfg, log);
    ss->last_output = log.str();
    if (rc != 0) {
      ss->last_error = "one or more run-level checks failed";
      return DPNLS_ERR_ASSERTION;
    }
    return DPNLS_OK;
  } catch (const std::exception& e) {
    ss->last_error = e.what();
    return DPNLS_ERR_RUNTIME;
  }
}

const char* dpnls_last_output(const dpnls_session* s) {
  const Session* ss = unwrap(s);
  return ss ? ss->last_output.c_str() : "";
}

const char* dpnls_last_error(const dpnls_session* s) {
  const Session* ss = unwrap(s);
  return ss ? ss->last_error.c_str() : "";
}

const char* dpnls_config_text(dpnls_session* s) {
  Session* ss = unwrap(s);
  if (!ss) return nullptr;
  try {
    dpnls::Config cfg = dpnls::parse_config(ss->config_path, ss->overrides);
    ss->config_text = dpnls::dump_config(cfg);
    ss->last_error.clear();
    return ss->config_text.c_str();
  } catch (const std::exception& e) {
    ss->last_error = e.what();
    return nullptr;
  }
}

const char* dpnls_version(void) { return "0.1.0"; }

}  // extern "C"
