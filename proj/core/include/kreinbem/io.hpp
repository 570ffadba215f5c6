// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_IO_HPP
#define KREINBEM_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "kreinbem/coupling.hpp"
#include "kreinbem/dense.hpp"
#include "kreinbem/format.hpp"
#include "kreinbem/geometry.hpp"
#include "kreinbem/volume_potential.hpp"

namespace kreinbem
{

/// Report schema tag.
inline constexpr std::string_view kSchema = "krein-bem/1";

// {"kind":"disk","radius":1.0,"panels":256}
// {"kind":"polygon","vertices":[[x,y],...],"panels_per_edge":32,"grading":3.0}
// {"kind":"star","coeffs":{"0":1.0,"3":0.2},"panels":256}
nlohmann::json domain_to_json(const DomainSpec &spec);
DomainSpec domain_from_json(const nlohmann::json &j);

// {"kind":"gaussian","center":[x,y],"width":w,"amplitude":a}
// {"kind":"sum","terms":[<gaussian>, ...]}
nlohmann::json source_to_json(const SourceField &f);
SourceField source_from_json(const nlohmann::json &j);

// {"n":N,"re":[row-major],"im":[row-major],"weights":[w_i]}
nlohmann::json operator_to_json(const DenseOperator &op);
DenseOperator operator_from_json(const nlohmann::json &j);

/// Rows "i,j,re,im" after a header line.
std::string operator_to_csv(const DenseOperator &op);

/// "const:c", "multiplier:k^s,c", or "matrix:<path>" (DenseOperator JSON file,
/// relative paths resolved against `base`).
RobinCoupling parse_coupling(std::string_view literal, const std::filesystem::path &base = {});

nlohmann::json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace kreinbem

#endif  // KREINBEM_IO_HPP
