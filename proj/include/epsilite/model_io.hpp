#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "epsilite/diagnostic.hpp"
#include "epsilite/metamodel.hpp"
#include "epsilite/model.hpp"

namespace epsilite {

/// Parses the `.mm` format:
///
///   class Graph { val nodes : Node[*]; }
///   class Node extends Named { attr weight : Integer; ref next : Node; }
///
/// `attr` declares a primitive attribute, `val` a containment, `ref` a
/// cross-reference; `[*]` makes the feature many-valued.
/// Throws DiagnosticError (with locations) on any syntax or semantic problem.
MetamodelPtr parse_metamodel(std::string_view text, std::string name = "metamodel",
                             std::string file = {});

/// Parses the `.model` format (`id : Class { feature = value ... }`).
/// Element references may point forward. Creation order is declaration order.
Model parse_model(std::string_view text, MetamodelPtr metamodel, std::string name = "model",
                  std::string file = {}, Access access = Access::read_write);

/// Canonical text: elements in creation order, slots in feature order,
/// unset and empty slots omitted.
std::string serialize_model(const Model& model);

/// Reads a UTF-8 text file with CRLF normalized to LF. Throws std::runtime_error.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

MetamodelPtr load_metamodel(const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path, MetamodelPtr metamodel, std::string name,
                 Access access = Access::read_write);

}  // namespace epsilite
