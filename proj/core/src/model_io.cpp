#include "isingtree/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isingtree/errors.hpp"

namespace isingtree {

using nlohmann::json;

std::string to_string(Parameterization p) {
  switch (p) {
    case Parameterization::mean: return "mean";
    case Parameterization::natural: return "natural";
    case Parameterization::canonical: return "canonical";
    case Parameterization::centered: return "centered";
  }
  return "mean";
}

Parameterization parameterization_from_string(const std::string& name) {
  if (name == "mean") return Parameterization::mean;
  if (name == "natural") return Parameterization::natural;
  if (name == "canonical") return Parameterization::canonical;
  if (name == "centered") return Parameterization::centered;
  throw ParseError("field 'parameterization': unknown value '" + name +
                   "' (expected mean, natural, canonical or centered)");
}

namespace {

const char* vertex_field_name(Parameterization p) {
  switch (p) {
    case Parameterization::mean: return "q";
    case Parameterization::natural: return "eta";
    case Parameterization::canonical: return "theta";
    case Parameterization::centered: return "kappa";
  }
  return "q";
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

double number_at(const json& j, const std::string& field) {
  if (!j.is_number())
    throw ParseError("field '" + field + "': expected a number");
  return j.get<double>();
}

}  // namespace

ModelFile parse_model_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError("line " + std::to_string(line_of_byte(text, err.byte)) + ": " +
                     err.what());
  }
  if (!doc.is_object()) throw ParseError("model file must be a JSON object");

  ModelFile out;
  if (doc.contains("parameterization")) {
    if (!doc["parameterization"].is_string())
      throw ParseError("field 'parameterization': expected a string");
    out.parameterization =
        parameterization_from_string(doc["parameterization"].get<std::string>());
  }

  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError("field 'vertices': required array of labels");
  std::vector<std::string> labels;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw ParseError("field 'vertices': entries must be strings");
    labels.push_back(v.get<std::string>());
  }
  if (labels.empty()) throw ParseError("field 'vertices': must not be empty");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw ParseError("field 'vertices': duplicate label '" + labels[i] + "'");

  auto vertex_of = [&](const std::string& label, const std::string& field) -> Vertex {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<Vertex>(i);
    throw ParseError("field '" + field + "': unknown vertex label '" + label + "'");
  };

  std::vector<Edge> edges;
  std::vector<double> edge_params;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array())
      throw ParseError("field 'edges': expected an array of [label,label,value]");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string())
        throw ParseError("field 'edges': entries must be [label, label, value]");
      edges.push_back(
          {vertex_of(e[0].get<std::string>(), "edges"), vertex_of(e[1].get<std::string>(), "edges")});
      edge_params.push_back(number_at(e[2], "edges"));
    }
  }

  const Vertex d = static_cast<Vertex>(labels.size());
  try {
    out.tree = TreeTopology(d, std::move(edges), labels);
  } catch (const Error& err) {
    throw ParseError("field 'edges': " + std::string(err.what()));
  }
  out.edge_params = std::move(edge_params);

  const char* vfield = vertex_field_name(out.parameterization);
  if (!doc.contains(vfield))
    throw ParseError("field '" + std::string(vfield) + "': required for the " +
                     to_string(out.parameterization) + " parameterization");
  const json& vparams = doc[vfield];
  out.vertex_params.assign(d, 0.0);
  if (vparams.is_number()) {
    std::fill(out.vertex_params.begin(), out.vertex_params.end(), vparams.get<double>());
  } else if (vparams.is_object()) {
    for (const auto& [label, value] : vparams.items()) {
      out.vertex_params[vertex_of(label, vfield)] = number_at(value, vfield);
    }
    for (Vertex v = 0; v < d; ++v)
      if (!vparams.contains(out.tree.label(v)))
        throw ParseError("field '" + std::string(vfield) + "': no value for vertex '" +
                         out.tree.label(v) + "'");
  } else {
    throw ParseError("field '" + std::string(vfield) +
                     "': expected a number or a {label: value} map");
  }

  if (doc.contains("root")) {
    if (!doc["root"].is_string())
      throw ParseError("field 'root': expected a vertex label");
    out.root = vertex_of(doc["root"].get<std::string>(), "root");
  }
  return out;
}

ModelFile load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_file(buffer.str());
}

std::string write_model_file(const ModelFile& file) {
  json doc;
  doc["parameterization"] = to_string(file.parameterization);
  doc["vertices"] = file.tree.labels();
  json edges = json::array();
  for (std::size_t i = 0; i < file.tree.edges().size(); ++i) {
    const Edge& e = file.tree.edges()[i];
    edges.push_back({file.tree.label(e.first), file.tree.label(e.second),
                     file.edge_params[i]});
  }
  doc["edges"] = edges;
  json vparams;
  for (Vertex v = 0; v < file.tree.vertex_count(); ++v)
    vparams[file.tree.label(v)] = file.vertex_params[v];
  doc[vertex_field_name(file.parameterization)] = vparams;
  doc["root"] = file.tree.label(file.root);
  return doc.dump(2) + "\n";
}

MeanParamIsing to_mean_model(const ModelFile& file) {
  switch (file.parameterization) {
    case Parameterization::mean:
      return MeanParamIsing(RootedTree(file.tree, file.root), file.vertex_params,
                            file.edge_params);
    case Parameterization::natural: {
      NaturalParamIsing natural{file.tree, file.vertex_params, file.edge_params, 0.0};
      return natural_to_mean(natural, file.root);
    }
    case Parameterization::canonical: {
      CanonicalParamIsing canonical{file.tree, file.vertex_params, file.edge_params, 0.0};
      return canonical_to_mean(canonical, file.root);
    }
    case Parameterization::centered: {
      NaturalParamIsing natural = centered_to_natural(
          CenteredParamIsing{file.tree, file.vertex_params, file.edge_params, 0.0});
      return natural_to_mean(natural, file.root);
    }
  }
  throw ParseError("unreachable parameterization");
}

ModelFile from_mean_model(const MeanParamIsing& model,
                          const std::vector<std::string>& labels) {
  ModelFile out;
  out.parameterization = Parameterization::mean;
  out.tree = labels.empty()
                 ? model.topology()
                 : TreeTopology(model.vertex_count(), model.topology().edges(), labels);
  out.root = model.rooted_tree().root();
  out.vertex_params = model.q();
  out.edge_params = model.alpha();
  return out;
}

}  // namespace isingtree
