#ifndef ISINGTREE_MODEL_IO_HPP
#define ISINGTREE_MODEL_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isingtree/model.hpp"
#include "isingtree/param_maps.hpp"
#include "isingtree/tree.hpp"

namespace isingtree {

enum class Parameterization { mean, natural, canonical, centered };

std::string to_string(Parameterization p);
Parameterization parameterization_from_string(const std::string& name);

/// Parsed model file: a JSON document with fields
///   parameterization  "mean" (default) | "natural" | "canonical" | "centered"
///   vertices          array of string labels
///   edges             array of [label, label, value] triples; the value is
///                     the edge parameter of the active parameterization
///                     (alpha / eta / theta / eta respectively)
///   q | eta | theta | kappa   scalar or {label: value} map of vertex
///                     parameters, keyed by parameterization
///   root              optional label, defaults to the first vertex
/// Parse and validation failures raise ParseError naming the line or field.
struct ModelFile {
  Parameterization parameterization = Parameterization::mean;
  TreeTopology tree = TreeTopology(1, {});
  Vertex root = 0;
  std::vector<double> vertex_params;  // by vertex index
  std::vector<double> edge_params;    // by edge index
};

ModelFile parse_model_file(const std::string& text);
ModelFile load_model_file(const std::filesystem::path& path);
std::string write_model_file(const ModelFile& file);

/// The mean-parameterized model a file denotes, converting through the
/// probability table when the file is in an exponential parameterization
/// (d <= 20 applies there).
MeanParamIsing to_mean_model(const ModelFile& file);

ModelFile from_mean_model(const MeanParamIsing& model,
                          const std::vector<std::string>& labels = {});

}  // namespace isingtree

#endif  // ISINGTREE_MODEL_IO_HPP
