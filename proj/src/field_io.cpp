// SPDX-License-Identifier: Apache-2.0
#include "nlscn/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nlscn {

void write_field(std::ostream& os, const FeField& field) {
  const Mesh& mesh = *field.mesh;
  const Rect& d = mesh.domain();
  char buf[200];
  os << "NLSFIELD v1\n";
  std::snprintf(buf, sizeof(buf), "level %d domain %.17g %.17g %.17g %.17g\n",
                mesh.level(), d.x0, d.y0, d.x1, d.y1);
  os << buf;
  const ComplexVector nodal = mesh.to_nodal(field.values);
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", nodal[i].real(),
                  nodal[i].imag());
    os << buf;
  }
}

void write_field_file(const std::string& path, const FeField& field) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open field file for writing: " + path);
  write_field(os, field);
}

FeField read_field(std::istream& is) {
  std::string magic, version;
  if (!(is >> magic >> version) || magic != "NLSFIELD" || version != "v1") {
    throw ConfigError("not a NLSFIELD v1 stream");
  }
  std::string kw_level, kw_domain;
  int level = -1;
  Rect d;
  if (!(is >> kw_level >> level >> kw_domain >> d.x0 >> d.y0 >> d.x1 >> d.y1) ||
      kw_level != "level" || kw_domain != "domain") {
    throw ConfigError("malformed NLSFIELD header");
  }
  MeshPtr mesh = build_uniform_mesh(d, level);
  ComplexVector nodal(mesh->num_nodes());
  for (int i = 0; i < mesh->num_nodes(); ++i) {
    double re, im;
    if (!(is >> re >> im)) {
      throw ConfigError("truncated NLSFIELD data");
    }
    nodal[i] = Complex(re, im);
  }
  return FeField(mesh, mesh->to_interior(nodal));
}

FeField read_field_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open field file: " + path);
  return read_field(is);
}

}  // namespace nlscn
