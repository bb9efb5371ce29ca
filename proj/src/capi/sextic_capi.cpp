#include "sextic/sextic.h"

#include "exactnum/real.hpp"
#include "repro/commands.hpp"


#include <new>
#include <string>

struct sextic_context {
  unsigned bits = 256;
  std::string last_error;
};

struct sextic_result {
  sextic_status status = SEXTIC_OK;
  std::string json;
  std::string csv;
  std::string message;
};

namespace {

bool valid_bits(unsigned bits) { return bits >= 32 && bits <= 65536; }

}  // namespace

extern "C" {

const char* sextic_version(void) { return "0.1.0"; }

const char* sextic_status_string(sextic_status status) {
  switch (status) {
    case SEXTIC_OK: return "ok";
    case SEXTIC_FAILURE: return "failure";
    case SEXTIC_NO_SOLUTIONS: return "no solutions";
    case SEXTIC_NON_CONVERGENCE: return "non-convergence";
    case SEXTIC_COLLISION: return "collision";
    case SEXTIC_BAD_INPUT: return "bad input";
  }
  return "unknown status";
}

sextic_status sextic_context_create(unsigned precision_bits, sextic_context** out) {
  if (!out) return SEXTIC_BAD_INPUT;
  *out = nullptr;
  if (precision_bits != 0 && !valid_bits(precision_bits)) return SEXTIC_BAD_INPUT;
  auto* ctx = new (std::nothrow) sextic_context;
  if (!ctx) return SEXTIC_FAILURE;
  if (precision_bits) ctx->bits = precision_bits;
  *out = ctx;
  return SEXTIC_OK;
}

void sextic_context_destroy(sextic_context* ctx) { delete ctx; }

sextic_status sextic_set_precision(sextic_context* ctx, unsigned precision_bits) {
  if (!ctx) return SEXTIC_BAD_INPUT;
  if (!valid_bits(precision_bits)) {
    ctx->last_error = "precision must be between 32 and 65536 bits";
    return SEXTIC_BAD_INPUT;
  }
  ctx->bits = precision_bits;
  return SEXTIC_OK;
}

unsigned sextic_get_precision(const sextic_context* ctx) { return ctx ? ctx->bits : 0; }

const char* sextic_last_error(const sextic_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

sextic_status sextic_run(sextic_context* ctx, const char* command, const char* request_json, sextic_result** out) {
  if (!ctx || !command || !request_json || !out) return SEXTIC_BAD_INPUT;
  *out = nullptr;
  ctx->last_error.clear();
  try {
    sextic::num::PrecisionScope scope(ctx->bits);
    auto request = sextic::io::Json::parse(request_json, nullptr, false);
    auto* r = new sextic_result;
    if (request.is_discarded()) {
      r->status = SEXTIC_BAD_INPUT;
      r->message = "request is not valid JSON";
      r->json = sextic::io::dump(sextic::io::Json{{"error", "parse error"}, {"message", r->message}});
    } else {
      auto res = sextic::repro::run_command(command, request);
      r->status = static_cast<sextic_status>(res.status);
      r->json = sextic::io::dump(res.json);
      r->csv = std::move(res.csv);
      r->message = std::move(res.message);
    }
    if (r->status != SEXTIC_OK) ctx->last_error = r->message;
    *out = r;
    return r->status;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return SEXTIC_FAILURE;
  }
}

sextic_status sextic_result_status(const sextic_result* r) { return r ? r->status : SEXTIC_BAD_INPUT; }
const char* sextic_result_json(const sextic_result* r) { return r ? r->json.c_str() : ""; }
const char* sextic_result_csv(const sextic_result* r) { return r ? r->csv.c_str() : ""; }
const char* sextic_result_message(const sextic_result* r) { return r ? r->message.c_str() : ""; }
void sextic_result_destroy(sextic_result* r) { delete r; }

}  // extern "C"
