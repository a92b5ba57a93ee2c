#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irfeed/mini_ir.hpp"

namespace irfeed::mir {

enum class PassName { ConstFold, Peephole, Cse, SimplifyCfg, Dce };

std::optional<PassName> pass_from_name(const std::string& name);
const char* pass_name(PassName p);

// All five catalog pass names, in canonical order.
const std::vector<std::string>& pass_catalog_names();

// The mini backend's stand-in for -Oz.
const std::vector<std::string>& reference_oz_pipeline();

// Applies one pass; the result re-verifies and never has more
// instructions than the input. Throws std::logic_error if the rewritten
// module fails verification (pass bug).
Module apply_pass(const Module& m, PassName pass);

struct PipelineError {
  std::string message;
};

struct PipelineResult {
  std::optional<Module> module;
  PipelineError error;
  bool ok() const { return module.has_value(); }
};

// Left-to-right composition of apply_pass over pass names.
PipelineResult apply_pipeline(const Module& m,
                              const std::vector<std::string>& passes);

Module reference_oz(const Module& m);

}  // namespace irfeed::mir
