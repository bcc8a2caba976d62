#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "oodn/oodn.hpp"

namespace oodn::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string strategy = "keyed";
  bool stats = false;
  std::string name;
  std::string descriptor;
  std::string output;

  std::vector<std::string> files;
  std::string minuend;
  std::size_t index = 0;
  std::string directory;
};

std::vector<AnyClass> load_all(const std::vector<std::string>& files) {
  std::vector<AnyClass> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load(f));
  return out;
}

std::string result_name(const Options& o, const std::string& fallback) {
  if (!o.name.empty()) return o.name;
  const std::string stem = fs::path(o.output).stem().string();
  if (is_identifier(stem)) return stem;
  return fallback;
}

void print_members(std::ostream& out, const char* label, const Specification& spec,
                   const Signature& sig) {
  out << "  " << label << ": " << spec.size() << " properties, " << sig.size() << " methods\n";
}

void summarize(std::ostream& out, const std::string& op, const AnyClass& c,
               const Options& o, const ExploiterStats* stats, const Lineage* lineage) {
  out << op << ": " << (c.is_homogeneous() ? "homogeneous" : "heterogeneous") << " class '"
      << c.name() << "'";
  if (!o.output.empty()) out << " -> " << o.output;
  out << "\n";
  if (c.is_homogeneous()) {
    print_members(out, "members", c.homogeneous().spec, c.homogeneous().sig);
  } else {
    const auto& h = c.heterogeneous();
    print_members(out, "core", h.core_spec, h.core_sig);
    out << "  projections: " << h.projections.size() << " (";
    for (std::size_t i = 0; i < h.projections.size(); ++i) {
      out << (i ? ", " : "") << h.projections[i].type_name;
    }
    out << ")\n";
  }
  if (lineage) {
    for (const auto& note : lineage->notes) out << "  note: " << note << "\n";
  }
  if (o.stats && stats) {
    out << "  stats (" << o.strategy << "): tuples_considered=" << stats->tuples_considered
        << " property_comparisons=" << stats->property_comparisons
        << " method_comparisons=" << stats->method_comparisons << "\n";
  }
}

Strategy strategy_of(const Options& o) {
  return o.strategy == "naive" ? Strategy::naive : Strategy::keyed;
}

void write_result(const AnyClass& c, const Lineage& lineage, const Options& o) {
  save(c, o.output);
  if (!o.descriptor.empty()) emit_descriptor(c, lineage, o.descriptor);
}

int finish_exploiter(std::ostream& out, const std::string& op, const ExploiterOutcome& r,
                     const Options& o) {
  write_result(r.result, r.lineage, o);
  summarize(out, op, r.result, o, &r.stats, &r.lineage);
  return kOk;
}

int cmd_validate(std::ostream& out, std::ostream& err, const Options& o) {
  int status = kOk;
  for (const auto& f : o.files) {
    try {
      AnyClass c = load(f);
      out << f << ": ok (" << (c.is_homogeneous() ? "homogeneous" : "heterogeneous") << " '"
          << c.name() << "')\n";
      for (const auto& w : validation_warnings(c)) out << "  warning: " << w << "\n";
    } catch (const ValidationError& e) {
      out << f << ": invalid\n";
      for (const auto& v : e.violations()) out << "  - " << v << "\n";
      status = std::max(status, kInvalid);
    } catch (const Error& e) {
      err << f << ": " << e.what() << "\n";
      if (status == kOk) status = kUsageOrIo;
    }
  }
  return status;
}

int need_inputs(std::ostream& err, const std::string& op, std::size_t have, std::size_t want) {
  err << op << ": needs at least " << want << " input files, got " << have << "\n";
  return kUsageOrIo;
}

int cmd_union(std::ostream& out, std::ostream& err, const Options& o) {
  if (o.files.size() < 2) return need_inputs(err, "union", o.files.size(), 2);
  auto inputs = load_all(o.files);
  return finish_exploiter(out, "union", union_of(inputs, strategy_of(o), result_name(o, "Union")), o);
}

int cmd_intersect(std::ostream& out, std::ostream& err, const Options& o) {
  if (o.files.size() < 2) return need_inputs(err, "intersect", o.files.size(), 2);
  auto inputs = load_all(o.files);
  return finish_exploiter(out, "intersect",
                          intersection_of(inputs, strategy_of(o), result_name(o, "Intersection")), o);
}

int cmd_diff(std::ostream& out, std::ostream& err, const Options& o) {
  if (o.files.empty()) return need_inputs(err, "diff", 0, 1);
  AnyClass minuend = load(o.minuend);
  auto subtrahends = load_all(o.files);
  return finish_exploiter(
      out, "diff",
      difference_of(minuend, subtrahends, strategy_of(o), result_name(o, "Difference")), o);
}

int cmd_symdiff(std::ostream& out, std::ostream&, const Options& o) {
  auto inputs = load_all(o.files);
  return finish_exploiter(out, "symdiff",
                          symmetric_difference_of(inputs[0], inputs[1], strategy_of(o),
                                                  result_name(o, "SymmetricDifference")),
                          o);
}

int cmd_clone(std::ostream& out, std::ostream& err, const Options& o) {
  if (o.name.empty()) {
    err << "clone: --name is required\n";
    return kUsageOrIo;
  }
  AnyClass source = load(o.files.at(0));
  AnyClass c = clone_class(source, o.name);
  Lineage lineage{"clone", {source.name()}, {}};
  write_result(c, lineage, o);
  summarize(out, "clone", c, o, nullptr, nullptr);
  return kOk;
}

int cmd_flatten(std::ostream& out, std::ostream&, const Options& o) {
  AnyClass source = load(o.files.at(0));
  auto types = types_of(source);
  if (o.index < 1 || o.index > types.size()) {
    throw IndexOutOfRange("index " + std::to_string(o.index) + " out of range 1.." +
                          std::to_string(types.size()) + " for class '" + source.name() + "'");
  }
  HomogeneousClass t = types[o.index - 1];
  if (!o.name.empty()) t.name = o.name;
  AnyClass c = clone_class(t, t.name);
  Lineage lineage{"flatten", {source.name()}, {}};
  write_result(c, lineage, o);
  summarize(out, "flatten", c, o, nullptr, nullptr);
  return kOk;
}

int cmd_emit(std::ostream& out, std::ostream&, const Options& o) {
  const std::string& file = o.files.at(0);
  AnyClass c = load(file);
  Lineage lineage{"load", {c.name()}, {}};
  // Re-emitting a descriptor keeps its recorded lineage.
  try {
    Descriptor d = parse_descriptor(read_file(file));
    lineage.op = d.op;
    lineage.inputs = d.inputs;
  } catch (const SchemaError&) {
  }
  emit_descriptor(c, lineage, o.output);
  out << "emit: descriptor for '" << c.name() << "' -> " << o.output << "\n";
  return kOk;
}

int cmd_register(std::ostream& out, std::ostream&, const Options& o) {
  Registry reg = Registry::open(o.directory);
  for (const auto& f : o.files) {
    AnyClass c = load(f);
    out << "registered '" << c.name() << "' -> " << reg.put(c, true).string() << "\n";
  }
  return kOk;
}

int cmd_list(std::ostream& out, std::ostream&, const Options& o) {
  Registry reg = Registry::open(o.directory);
  for (const auto& name : reg.names()) out << name << "\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Runtime class generation with universal exploiters", "oodn"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options o;
  app.add_option("--strategy", o.strategy, "Comparison strategy")
      ->check(CLI::IsMember({"naive", "keyed"}))
      ->capture_default_str();
  app.add_flag("--stats", o.stats, "Print comparison counters");
  app.add_option("--name", o.name, "Name of the resulting class");
  app.add_option("--descriptor", o.descriptor, "Also write a descriptor of the result here");

  using Handler = std::function<int(std::ostream&, std::ostream&, const Options&)>;
  std::map<CLI::App*, Handler> handlers;

  auto* validate_cmd = app.add_subcommand("validate", "Check class files against the model invariants");
  validate_cmd->add_option("files", o.files, "Class files")->required();
  handlers[validate_cmd] = cmd_validate;

  auto* union_cmd = app.add_subcommand("union", "Union of two or more classes");
  union_cmd->add_option("files", o.files, "Input class files")->required();
  union_cmd->add_option("-o,--output", o.output, "Output class file")->required();
  handlers[union_cmd] = cmd_union;

  auto* inter_cmd = app.add_subcommand("intersect", "Homogeneous intersection of two or more classes");
  inter_cmd->add_option("files", o.files, "Input class files")->required();
  inter_cmd->add_option("-o,--output", o.output, "Output class file")->required();
  handlers[inter_cmd] = cmd_intersect;

  auto* diff_cmd = app.add_subcommand("diff", "Difference of a class and one or more classes");
  diff_cmd->add_option("minuend", o.minuend, "Class to subtract from")->required();
  diff_cmd->add_option("files", o.files, "Classes to subtract")->required();
  diff_cmd->add_option("-o,--output", o.output, "Output class file")->required();
  handlers[diff_cmd] = cmd_diff;

  auto* sym_cmd = app.add_subcommand("symdiff", "Symmetric difference of two classes");
  sym_cmd->add_option("files", o.files, "The two input class files")->required()->expected(2);
  sym_cmd->add_option("-o,--output", o.output, "Output class file")->required();
  handlers[sym_cmd] = cmd_symdiff;

  auto* clone_cmd = app.add_subcommand("clone", "Copy a class under a new name (--name)");
  clone_cmd->add_option("files", o.files, "Class file")->required()->expected(1);
  clone_cmd->add_option("-o,--output", o.output, "Output class file")->required();
  handlers[clone_cmd] = cmd_clone;

  auto* flatten_cmd = app.add_subcommand("flatten", "Extract one type of a class as a homogeneous class");
  flatten_cmd->add_option("files", o.files, "Class file")->required()->expected(1);
  flatten_cmd->add_option("--index", o.index, "1-based type index")->required();
  flatten_cmd->add_option("-o,--output", o.output, "Output class file")->required();
  handlers[flatten_cmd] = cmd_flatten;

  auto* emit_cmd = app.add_subcommand("emit", "Write a descriptor for runtime materialization");
  emit_cmd->add_option("files", o.files, "Class or descriptor file")->required()->expected(1);
  emit_cmd->add_option("-o,--output", o.output, "Output descriptor file")->required();
  handlers[emit_cmd] = cmd_emit;

  auto* register_cmd = app.add_subcommand("register", "Add class files to a registry directory");
  register_cmd->add_option("directory", o.directory, "Registry directory")->required();
  register_cmd->add_option("files", o.files, "Class files")->required();
  handlers[register_cmd] = cmd_register;

  auto* list_cmd = app.add_subcommand("list", "List the classes of a registry directory");
  list_cmd->add_option("directory", o.directory, "Registry directory")->required();
  handlers[list_cmd] = cmd_list;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageOrIo;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    return handlers.at(chosen)(out, err, o);
  } catch (const DoesNotExist& e) {
    err << chosen->get_name() << ": " << e.what() << "\n";
    return kDoesNotExist;
  } catch (const ValidationError& e) {
    err << chosen->get_name() << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err << chosen->get_name() << ": " << e.what() << "\n";
    return kUsageOrIo;
  }
}

}  // namespace oodn::cli
