// Command-line surface for the ttg engine: parse, validate, compute, verify,
// export. Exit codes: 0 success, 1 validation failure, 2 property violation,
// 3 parse/IO error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ttg/formats.hpp"

namespace {

struct Exit {
  int code;
};

struct Options {
  bool json = false;
  bool dot = false;
  bool quiet = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ttg::ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const Options& opts, const std::string& payload) {
  if (!opts.quiet) std::cout << payload;
}

ttg::Presentation load_model(const std::string& path, const Options& opts,
                             bool print_report = false) {
  const ttg::Presentation model = ttg::parse_presentation(read_file(path));
  const ttg::ValidationReport report = ttg::validate_presentation(model);
  if (report.ok()) {
    if (print_report) emit(opts, "ok\n");
    return model;
  }
  std::ostream& out = print_report && !opts.quiet ? std::cout : std::cerr;
  for (const ttg::Violation& v : report.violations)
    out << v.rule << " " << v.subject << ": " << v.message << "\n";
  throw Exit{1};
}

std::string point_label(const ttg::Spectrum& space, int i) {
  return ttg::object_to_string(space.model, space.points[static_cast<std::size_t>(i)]);
}

int cmd_validate(const std::string& path, const Options& opts) {
  load_model(path, opts, /*print_report=*/true);
  return 0;
}

int cmd_spc(const std::string& path, const Options& opts) {
  const ttg::Presentation model = load_model(path, opts);
  const ttg::Spectrum space = ttg::spectrum(model);
  if (opts.dot) {
    emit(opts, ttg::spectrum_to_dot(space));
    return 0;
  }
  if (opts.json) {
    emit(opts, ttg::spectrum_to_json(space));
    return 0;
  }
  std::string out = "points: " + std::to_string(space.point_count()) + "\n";
  for (int i = 0; i < space.point_count(); ++i)
    out += "p" + std::to_string(i) + " = " + point_label(space, i) + "\n";
  out += "specialization:\n";
  for (int i = 0; i < space.point_count(); ++i)
    for (int j = 0; j < space.point_count(); ++j)
      if (i != j && space.specializes(i, j))
        out += "p" + std::to_string(i) + " -> p" + std::to_string(j) + "\n";
  emit(opts, out);
  return 0;
}

int cmd_ideals(const std::string& path, const Options& opts) {
  const ttg::Presentation model = load_model(path, opts);
  const std::vector<ttg::Ideal> ideals = ttg::all_ideals(model);
  const std::vector<ttg::Ideal> primes = ttg::all_primes(model);
  std::string out;
  if (opts.json) {
    out = "{\"ideals\":[";
    for (std::size_t i = 0; i < ideals.size(); ++i) {
      if (i) out += ",";
      out += "{\"atoms\":" +
             ttg::detail::json_string_array(ttg::object_names_sorted(model, ideals[i].atoms)) +
             ",\"prime\":";
      out += ttg::is_prime(model, ideals[i]) ? "true" : "false";
      out += ",\"radical\":";
      out += ttg::radical(model, ideals[i], primes) == ideals[i] ? "true" : "false";
      out += "}";
    }
    out += "]}\n";
  } else {
    for (const ttg::Ideal& ideal : ideals) {
      out += ttg::object_to_string(model, ideal.atoms);
      out += ttg::is_prime(model, ideal) ? " prime=yes" : " prime=no";
      out += ttg::radical(model, ideal, primes) == ideal ? " radical=yes" : " radical=no";
      out += "\n";
    }
  }
  emit(opts, out);
  return 0;
}

int cmd_classify(const std::string& path, const Options& opts) {
  const ttg::Presentation model = load_model(path, opts);
  const ttg::ClassificationReport report = ttg::verify_classification(model);
  if (opts.json) {
    emit(opts, ttg::classification_to_json(report));
  } else {
    std::string out = "points:";
    for (int i = 0; i < report.space.point_count(); ++i)
      out += " p" + std::to_string(i) + "=" + point_label(report.space, i);
    out += "\n";
    for (const ttg::ClassificationPair& pair : report.forward) {
      out += "Y={";
      bool sep = false;
      for (int i : pair.subset) {
        if (sep) out += ",";
        out += "p" + std::to_string(i);
        sep = true;
      }
      out += "} <-> K_Y=" + ttg::object_to_string(model, pair.ideal.atoms) + "\n";
    }
    out += report.roundtrip_ok ? "roundtrip: ok\n" : "roundtrip: FAILED\n";
    emit(opts, out);
  }
  if (!report.roundtrip_ok) {
    for (const std::string& failure : report.failures) std::cerr << failure << "\n";
    return 2;
  }
  return 0;
}

int cmd_support_data(const std::string& model_path, const std::string& data_path,
                     const Options& opts) {
  const ttg::Presentation model = load_model(model_path, opts);
  const ttg::SupportData data = ttg::parse_support_data(read_file(data_path), model);
  const ttg::SupportDataReport report = ttg::verify_support_data(model, data);
  if (!report.ok()) {
    std::string out = "axioms: " + std::to_string(report.violations.size()) + " violation" +
                      (report.violations.size() == 1 ? "" : "s") + "\n";
    for (const ttg::Violation& v : report.violations)
      out += v.rule + " " + v.subject + ": " + v.message + "\n";
    emit(opts, out);
    return 2;
  }
  std::string out = "axioms: ok\n";
  const ttg::UniversalMap map = ttg::universal_map(model, data);
  for (int i = 0; i < data.space.point_count(); ++i)
    out += "map: " + data.space.point_names[static_cast<std::size_t>(i)] + " -> " +
           point_label(map.codomain, map.point_map[static_cast<std::size_t>(i)]) + "\n";
  const bool classifying = ttg::is_classifying(model, data);
  out += classifying ? "classifying: yes\n" : "classifying: no\n";
  if (classifying) {
    const ttg::HomeoCheck check = ttg::classifying_homeo_check(model, data);
    out += check.homeomorphism ? "homeomorphism: yes\n" : "homeomorphism: no\n";
    emit(opts, out);
    if (!check.homeomorphism) {
      for (const std::string& failure : check.failures) std::cerr << failure << "\n";
      return 2;
    }
    return 0;
  }
  emit(opts, out);
  return 0;
}

int cmd_map(const std::string& source_path, const std::string& target_path,
            const std::string& functor_path, const Options& opts) {
  const ttg::Presentation source = load_model(source_path, opts);
  const ttg::Presentation target = load_model(target_path, opts);
  const ttg::ModelFunctor functor =
      ttg::parse_model_functor(read_file(functor_path), source, target);
  const ttg::FunctorReport report = ttg::validate_functor(functor);
  if (!report.ok()) {
    for (const ttg::Violation& v : report.violations)
      std::cerr << v.rule << " " << v.subject << ": " << v.message << "\n";
    return 1;
  }
  const ttg::SpectrumMap map = ttg::spectrum_map(functor);
  std::string out;
  for (int q = 0; q < map.domain.point_count(); ++q)
    out += point_label(map.domain, q) + " -> " +
           point_label(map.codomain, map.point_map[static_cast<std::size_t>(q)]) + "\n";
  emit(opts, out);
  return 0;
}

int cmd_quotient(const std::string& path, const std::string& ideal_csv,
                 const std::string& out_path, const Options& opts) {
  const ttg::Presentation model = load_model(path, opts);
  ttg::AtomSet atoms;
  std::size_t start = 0;
  while (start <= ideal_csv.size()) {
    const std::size_t comma = ideal_csv.find(',', start);
    const std::string token = ideal_csv.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!token.empty()) {
      const auto atom = model.find_atom(token);
      if (!atom) throw ttg::ParseError("unknown atom '" + token + "' in --ideal");
      atoms |= ttg::AtomSet::single(*atom);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (!ttg::is_thick_tensor_ideal(model, atoms)) {
    atoms = ttg::ideal_generated_by(model, {atoms}).atoms;
    std::cerr << "notice: saturated to " << ttg::object_to_string(model, atoms) << "\n";
  }
  const ttg::QuotientModel result = ttg::quotient_model(model, ttg::Ideal{atoms});
  const std::string presentation = ttg::write_presentation(result.quotient);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ttg::ParseError("cannot write '" + out_path + "'");
    out << presentation;
  } else {
    emit(opts, presentation);
  }
  std::string verdict = "# primes >= J: " + std::to_string(result.report.primes_over_ideal) +
                        "; quotient spectrum: " + std::to_string(result.report.quotient_points) +
                        "; correspondence: ";
  verdict += result.report.ok ? "homeomorphism" : "FAILED";
  verdict += "\n";
  emit(opts, verdict);
  if (!result.report.ok) {
    for (const std::string& failure : result.report.failures) std::cerr << failure << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor triangular geometry toolkit"};
  app.require_subcommand(1);

  Options opts;
  app.add_flag("--json", opts.json, "emit JSON");
  app.add_flag("--dot", opts.dot, "emit Graphviz DOT");
  app.add_flag("--quiet", opts.quiet, "suppress stdout payload");

  std::string model_path, data_path, source_path, target_path, functor_path;
  std::string ideal_csv, out_path;

  CLI::App* validate = app.add_subcommand("validate", "check a presentation");
  validate->add_option("model", model_path)->required();
  CLI::App* spc = app.add_subcommand("spc", "compute the spectrum");
  spc->add_option("model", model_path)->required();
  CLI::App* ideals = app.add_subcommand("ideals", "enumerate thick tensor ideals");
  ideals->add_option("model", model_path)->required();
  CLI::App* classify = app.add_subcommand("classify", "verify the classification bijection");
  classify->add_option("model", model_path)->required();
  CLI::App* support = app.add_subcommand("support-data", "check a support datum");
  support->add_option("model", model_path)->required();
  support->add_option("data", data_path)->required();
  CLI::App* map = app.add_subcommand("map", "induced map on spectra");
  map->add_option("source", source_path)->required();
  map->add_option("target", target_path)->required();
  map->add_option("functor", functor_path)->required();
  CLI::App* quotient = app.add_subcommand("quotient", "quotient by a thick tensor ideal");
  quotient->add_option("model", model_path)->required();
  quotient->add_option("--ideal", ideal_csv, "comma-separated atom list")->required();
  quotient->add_option("--out", out_path, "write the quotient presentation to a file");
  for (CLI::App* sub : {validate, spc, ideals, classify, support, map, quotient})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(model_path, opts);
    if (spc->parsed()) return cmd_spc(model_path, opts);
    if (ideals->parsed()) return cmd_ideals(model_path, opts);
    if (classify->parsed()) return cmd_classify(model_path, opts);
    if (support->parsed()) return cmd_support_data(model_path, data_path, opts);
    if (map->parsed()) return cmd_map(source_path, target_path, functor_path, opts);
    if (quotient->parsed()) return cmd_quotient(model_path, ideal_csv, out_path, opts);
  } catch (const Exit& exit) {
    return exit.code;
  } catch (const ttg::ParseError& error) {
    std::cerr << "parse error: " << error.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const std::logic_error& error) {
    std::cerr << "engine invariant violation: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  }
  return 0;
}
