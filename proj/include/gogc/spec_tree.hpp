#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gogc/coords.hpp"
#include "gogc/datastore.hpp"
#include "gogc/geometry.hpp"
#include "gogc/guides.hpp"
#include "gogc/scales.hpp"
#include "gogc/transform.hpp"

namespace gogc {

using Json = nlohmann::ordered_json;

struct DataSpec {
  std::string name;
  std::optional<std::string> file;   // "values": "f.csv" or "url"
  std::optional<Json> inline_rows;   // "values": [...]
  std::string format;                // csv | tsv | json
  std::string path;

  bool operator==(const DataSpec&) const = default;
};

enum class TransformKind { Filter, Group, Join, Cross, Nest, Variable, Generator };

std::string_view to_string(TransformKind k);

struct TransformSpec {
  TransformKind kind = TransformKind::Filter;
  std::string data;              // input (left side for join and cross)
  std::string right;             // join and cross
  std::optional<std::string> name;  // explicit output name
  std::string expr;              // filter
  std::vector<std::string> keys;    // group
  std::vector<Aggregate> aggregates;
  std::string key;               // join
  JoinSide side = JoinSide::Left;
  std::string x, y;              // nest
  std::vector<std::string> fields;
  std::string function;          // variable and generator
  Properties properties;
  std::string field;             // variable
  std::string path;

  // Dataset written by the step. Unnamed steps replace their input; a
  // generator writes properties.data, properties.name or its function name.
  std::string output() const;
  std::vector<std::string> inputs() const;
};

struct ScaleSpec {
  ScaleDef def;
  std::string path;
};

// A channel as written: a scale name, a field, a constant, or a scale applied
// to a field or a constant.
struct ChannelSpec {
  std::optional<std::string> scale;
  std::optional<std::string> field;
  std::optional<Json> value;
  std::string path;
  std::string scale_path;  // where the scale name was written

  bool operator==(const ChannelSpec&) const = default;
};

struct GeomSpec {
  MarkKind kind = MarkKind::Point;
  std::optional<std::string> data;
  std::map<std::string, ChannelSpec> channels;
  MarkParams params;
  std::string path;
};

struct AxisEntry {
  AxisSpec spec;
  std::string path;
};

struct AxesSpec {
  CoordKind kind = CoordKind::Cartesian;
  double inset = 0.0;
  std::vector<AxisEntry> axes;
  std::string path;
};

struct GuideEntry {
  GuideSpec spec;
  std::string path;
  std::string scale_path;
};

// A parameter the user left out and the parser filled in.
struct DefaultRecord {
  std::string path;
  Json value;

  bool operator==(const DefaultRecord&) const = default;
};

struct SpecTree {
  PlotFrame frame;
  std::vector<DataSpec> data;
  std::vector<TransformSpec> transforms;
  std::vector<ScaleSpec> scales;
  AxesSpec axes;
  std::vector<GeomSpec> geoms;
  std::vector<GuideEntry> guides;
  std::vector<DefaultRecord> defaults;

  const ScaleSpec* find_scale(std::string_view name) const;
  CoordSystem coord_system() const;
};

}  // namespace gogc
