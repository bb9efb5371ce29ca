#pragma once

#include "io/json_io.hpp"

#include <string>

namespace sextic::repro {

enum class Status {
  Ok = 0,
  Failure = 1,
  NoSolutions = 2,
  NonConvergence = 3,
  Collision = 4,
  BadInput = 64,
};

struct CommandResult {
  Status status = Status::Ok;
  io::Json json = io::Json::object();
  std::string csv;  // trajectories and continuation branches
  std::string message;
};

/// Runs one of qes, darboux, locus, stieltjes, dynamics, repro on a JSON
/// request at the working precision.  Never throws for bad input; the status
/// says what went wrong and json keeps whatever partial result exists.
CommandResult run_command(const std::string& name, const io::Json& request);

}  // namespace sextic::repro
