#include "cat0/complex_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cat0 {

std::string store_complex(const TriComplex& cx) {
  std::ostringstream os;
  const auto& n = cx.disk_condition().n;
  os << "{\n  \"disk_condition\": [" << n[0] << ", " << n[1] << ", " << n[2] << "],\n";
  os << "  \"vertices\": [";
  for (VertexId v = 0; v < cx.num_vertices(); ++v) {
    os << (v ? ",\n    " : "\n    ") << "{\"id\": " << v << ", \"type\": " << cx.type(v) << "}";
  }
  os << (cx.num_vertices() ? "\n  ],\n" : "],\n");
  os << "  \"faces\": [";
  for (FaceId f = 0; f < cx.num_faces(); ++f) {
    const auto& fc = cx.face(f);
    os << (f ? ",\n    " : "\n    ") << "[" << fc[0] << ", " << fc[1] << ", " << fc[2] << "]";
  }
  os << (cx.num_faces() ? "\n  ],\n" : "],\n");
  os << "  \"boundary_margin\": " << cx.boundary_margin() << "\n}\n";
  return os.str();
}

TriComplex load_complex(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("complex file is not valid JSON: ") + e.what());
  }
  try {
    DiskCondition dc;
    const auto& d = j.at("disk_condition");
    if (!d.is_array() || d.size() != 3) throw InputError("disk_condition must be a list of three integers");
    for (int i = 0; i < 3; ++i) dc.n[i] = d.at(i).get<int>();
    std::vector<int> types;
    for (const auto& v : j.at("vertices")) {
      int id = v.at("id").get<int>();
      if (id != static_cast<int>(types.size())) throw InputError("vertex ids must be 0..n-1 in order");
      types.push_back(v.at("type").get<int>());
    }
    std::vector<std::array<VertexId, 3>> faces;
    for (const auto& f : j.at("faces")) {
      if (!f.is_array() || f.size() != 3) throw InputError("each face must list three vertex ids");
      faces.push_back({f.at(0).get<int>(), f.at(1).get<int>(), f.at(2).get<int>()});
    }
    int margin = j.at("boundary_margin").get<int>();
    validate_disk_condition(dc);
    return TriComplex::build(dc, std::move(types), std::move(faces), margin);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed complex file: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

TriComplex read_complex_file(const std::string& path) { return load_complex(read_text_file(path)); }

void write_complex_file(const TriComplex& cx, const std::string& path) { write_text_file(path, store_complex(cx)); }

}  // namespace cat0
