#include "epsilite/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <set>

#include "epsilite/egl.hpp"
#include "epsilite/eol/interpreter.hpp"
#include "epsilite/eol/parser.hpp"
#include "epsilite/evl.hpp"
#include "epsilite/flock.hpp"
#include "epsilite/model_io.hpp"

namespace epsilite::cli {

namespace {

Diagnostic spec_error(std::string message) {
  return Diagnostic{Severity::error, std::move(message), SourceLocation{"--model", 1, 1}};
}

struct Session {
  std::vector<ModelBinding> bindings;
  Repository repository;

  void load(const std::vector<std::string>& specs) {
    for (const auto& spec : specs) bindings.push_back(parse_model_spec(spec));
    for (const auto& b : bindings) repository.add(load_binding(b));
  }

  void save() const {
    for (const auto& b : bindings) {
      if (!b.out) continue;
      const Model* m = repository.find(b.name);
      if (m->writable()) write_text_file(*b.out, serialize_model(*m));
    }
  }
};

int run_eol(const std::string& script, const std::vector<std::string>& specs, std::ostream& out,
            std::ostream& err) {
  eol::Program program = eol::parse_eol(read_text_file(script), script);
  Session session;
  session.load(specs);
  eol::ExecutionResult result = eol::run_program(program, session.repository);
  out << result.output;
  if (result.error) {
    err << result.error->what() << "\n";
    return 2;
  }
  session.save();
  return 0;
}

int run_egl(const std::string& path, const std::vector<std::string>& specs,
            const std::optional<std::string>& out_file, std::ostream& out, std::ostream& err) {
  egl::Template tmpl = egl::parse_egl(read_text_file(path), path);
  Session session;
  session.load(specs);
  egl::RenderResult result = egl::render(tmpl, session.repository);
  out << result.output;
  if (result.error) {
    if (!out_file) out << result.text;
    err << result.error->what() << "\n";
    return 2;
  }
  if (out_file) {
    write_text_file(*out_file, result.text);
  } else {
    out << result.text;
  }
  session.save();
  return 0;
}

std::pair<std::string, std::size_t> parse_fix_option(const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw std::runtime_error("--fix expects <Constraint>:<index>, got '" + text + "'");
  }
  std::string index = text.substr(colon + 1);
  if (!std::all_of(index.begin(), index.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw std::runtime_error("--fix index must be a non-negative integer, got '" + index + "'");
  }
  return {text.substr(0, colon), std::stoul(index)};
}

std::string violation_key(const evl::Violation& v) {
  return v.element.model + "/" + v.element.id + "/" + std::to_string(v.context_index) + "/" +
         std::to_string(v.constraint_index);
}

int run_evl(const std::string& path, const std::vector<std::string>& specs,
            const std::optional<std::string>& fix, bool interactive, std::ostream& out,
            std::istream& in) {
  evl::ConstraintCatalog catalog = evl::parse_evl(read_text_file(path), path);
  Session session;
  session.load(specs);

  std::set<std::string> handled;
  auto next_unhandled = [&](const evl::ValidationReport& report,
                            const std::optional<std::string>& constraint) -> const evl::Violation* {
    for (const auto& v : report.violations) {
      if (constraint && v.constraint != *constraint) continue;
      if (!handled.count(violation_key(v))) return &v;
    }
    return nullptr;
  };

  if (fix) {
    auto [constraint, index] = parse_fix_option(*fix);
    for (;;) {
      evl::ValidationReport report = evl::validate(catalog, session.repository);
      const evl::Violation* v = next_unhandled(report, constraint);
      if (!v) break;
      handled.insert(violation_key(*v));
      if (index >= v->fix_titles.size()) {
        throw evl::FixError("fix index " + std::to_string(index) + " out of range for " +
                            constraint);
      }
      out << "FIXED " << v->constraint << " " << display(v->element) << ": "
          << v->fix_titles[index] << "\n";
      evl::apply_fix(catalog, session.repository, *v, index);
    }
  } else if (interactive) {
    std::string line;
    for (;;) {
      evl::ValidationReport report = evl::validate(catalog, session.repository);
      const evl::Violation* v = next_unhandled(report, std::nullopt);
      if (!v) break;
      handled.insert(violation_key(*v));
      out << format_report(evl::ValidationReport{{*v}});
      if (v->fix_titles.empty()) continue;
      std::optional<std::size_t> choice;
      for (;;) {
        out << "select fix [0-" << v->fix_titles.size() - 1 << "] or s to skip: " << std::flush;
        if (!std::getline(in, line)) break;
        if (line == "s") break;
        if (!line.empty() && line.size() < 10 && std::all_of(line.begin(), line.end(),
                                         [](unsigned char c) { return std::isdigit(c); })) {
          std::size_t k = std::stoul(line);
          if (k < v->fix_titles.size()) {
            choice = k;
            break;
          }
        }
        out << "invalid choice '" << line << "'\n";
      }
      if (!in) break;
      if (choice) {
        out << "FIXED " << v->constraint << " " << display(v->element) << ": "
            << v->fix_titles[*choice] << "\n";
        evl::apply_fix(catalog, session.repository, *v, *choice);
      }
    }
  }

  evl::ValidationReport final_report = evl::validate(catalog, session.repository);
  out << evl::format_report(final_report);
  session.save();
  return final_report.violations.empty() ? 0 : 1;
}

int run_flock(const std::string& path, const std::string& original_spec,
              const std::string& target_metamodel, const std::string& out_file, std::ostream& out) {
  flock::Strategy strategy = flock::parse_flock(read_text_file(path), path);
  ModelBinding binding = parse_model_spec(original_spec);
  Model original = load_binding(binding);
  original.set_access(Access::read_only);
  MetamodelPtr target = load_metamodel(target_metamodel);
  flock::MigrationResult result = flock::migrate_model(strategy, original, target);
  out << result.output;
  write_text_file(out_file, serialize_model(result.migrated));
  return 0;
}

}  // namespace

ModelBinding parse_model_spec(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view part = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    std::size_t eq = part.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw DiagnosticError(spec_error("malformed model spec entry '" + std::string(part) +
                                       "' (expected key=value)"));
    }
    std::string key(part.substr(0, eq));
    std::string value(part.substr(eq + 1));
    static const std::set<std::string> keys = {"name", "metamodel", "model", "access", "out"};
    if (!keys.count(key)) throw DiagnosticError(spec_error("unknown model spec key '" + key + "'"));
    if (value.empty()) throw DiagnosticError(spec_error("empty value for '" + key + "'"));
    if (!fields.emplace(key, value).second) {
      throw DiagnosticError(spec_error("duplicate model spec key '" + key + "'"));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }

  for (const char* required : {"name", "metamodel", "access"}) {
    if (!fields.count(required)) {
      throw DiagnosticError(spec_error(std::string("model spec is missing '") + required + "'"));
    }
  }

  ModelBinding binding;
  binding.name = fields["name"];
  binding.metamodel = fields["metamodel"];
  if (fields.count("model")) binding.model = fields["model"];
  if (fields.count("out")) binding.out = fields["out"];
  const std::string& access = fields["access"];
  if (access == "r") {
    binding.access = Access::read_only;
  } else if (access == "w") {
    binding.access = Access::write_only;
  } else if (access == "rw") {
    binding.access = Access::read_write;
  } else {
    throw DiagnosticError(spec_error("access must be r, w or rw, got '" + access + "'"));
  }
  if (binding.out && binding.access == Access::read_only) {
    throw DiagnosticError(spec_error("model " + binding.name + " is read-only but has an out path"));
  }
  return binding;
}

Model load_binding(const ModelBinding& binding) {
  MetamodelPtr mm = load_metamodel(binding.metamodel);
  if (binding.model) return load_model(*binding.model, mm, binding.name, binding.access);
  return Model(binding.name, mm, binding.access);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app{"model management workbench", "epsilite"};
  app.require_subcommand(1);

  std::string script;
  std::vector<std::string> models;
  std::optional<std::string> out_file;
  std::optional<std::string> fix;
  bool interactive = false;
  std::string original;
  std::string target_metamodel;
  std::string flock_out;

  auto* eol_cmd = app.add_subcommand("run-eol", "Run an EOL script");
  eol_cmd->add_option("script", script, "Script (.eol)")->required();
  eol_cmd->add_option("--model", models, "Model binding")->required();

  auto* egl_cmd = app.add_subcommand("run-egl", "Render an EGL template");
  egl_cmd->add_option("template", script, "Template (.egl)")->required();
  egl_cmd->add_option("--model", models, "Model binding")->required();
  egl_cmd->add_option("--out", out_file, "Write the rendered text to this file");

  auto* evl_cmd = app.add_subcommand("run-evl", "Validate models with an EVL catalog");
  evl_cmd->add_option("catalog", script, "Constraint catalog (.evl)")->required();
  evl_cmd->add_option("--model", models, "Model binding")->required();
  auto* fix_opt = evl_cmd->add_option("--fix", fix, "Apply fix <Constraint>:<index> to every violation");
  auto* interactive_opt = evl_cmd->add_flag("--interactive", interactive, "Choose fixes per violation");
  fix_opt->excludes(interactive_opt);

  auto* flock_cmd = app.add_subcommand("run-flock", "Migrate a model with a Flock strategy");
  flock_cmd->add_option("strategy", script, "Migration strategy (.mig)")->required();
  flock_cmd->add_option("--original", original, "Original model binding")->required();
  flock_cmd->add_option("--target-metamodel", target_metamodel, "Metamodel of the result")->required();
  flock_cmd->add_option("--out", flock_out, "Where to write the migrated model")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (eol_cmd->parsed()) return run_eol(script, models, out, err);
    if (egl_cmd->parsed()) return run_egl(script, models, out_file, out, err);
    if (evl_cmd->parsed()) return run_evl(script, models, fix, interactive, out, in);
    return run_flock(script, original, target_metamodel, flock_out, out);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace epsilite::cli
