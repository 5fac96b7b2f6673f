#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epsilite/model.hpp"

namespace epsilite::cli {

/// One `--model` argument:
/// `name=<id>,metamodel=<path>[,model=<path>],access=<r|w|rw>[,out=<path>]`
struct ModelBinding {
  std::string name;
  std::filesystem::path metamodel;
  std::optional<std::filesystem::path> model;  // absent: start empty
  Access access = Access::read_only;
  std::optional<std::filesystem::path> out;   // requires w or rw
};

/// Throws DiagnosticError for malformed or missing keys and for `out`
/// combined with read-only access.
ModelBinding parse_model_spec(std::string_view text);

/// Loads the metamodel and (if given) the model file of a binding.
Model load_binding(const ModelBinding& binding);

/// Entry point behind the `epsilite` executable. `args` excludes the program
/// name. Returns 0 on success, 1 when validation violations remain, 2 on
/// any parse, runtime or I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace epsilite::cli
