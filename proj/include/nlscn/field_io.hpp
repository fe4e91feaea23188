// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "nlscn/mesh.hpp"

namespace nlscn {

/// Text field format:
///   NLSFIELD v1
///   level <k> domain <x0> <y0> <x1> <y1>
///   <re> <im>            one pair per node, lexicographic order,
///                        full node set with boundary zeros written explicitly
void write_field(std::ostream& os, const FeField& field);
void write_field_file(const std::string& path, const FeField& field);

FeField read_field(std::istream& is);
FeField read_field_file(const std::string& path);

}  // namespace nlscn
