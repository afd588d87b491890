#pragma once

#include <string>

#include "super/hcpair.hpp"
#include "super/moment.hpp"
#include "super/superfunctions.hpp"

namespace sup {

// Document layer: every function takes or returns serialized JSON text, so
// the JSON library stays out of the installed headers. Loaders validate
// against the schema and throw schema_error with the offending key.

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::string sha256_hex(const std::string& bytes);

LieSuperalgebraSpec algebra_from_json(const std::string& text);
std::string algebra_to_json(const LieSuperalgebraSpec& spec);

// {"algebra": <path or inline object>, "group": {"model": ...}}; a relative
// algebra path resolves against base_dir.
HCPair pair_from_json(const std::string& text, const std::string& base_dir);

GrassmannElement grassmann_from_json(const std::string& text);
std::string grassmann_to_json(const GrassmannElement& a);

GrMorphism morphism_from_json(const std::string& text);
std::string morphism_to_json(const GrMorphism& phi);

SuperTensor tensor_from_json(const LieSuperalgebraSpec& spec, const std::string& text);
std::string tensor_to_json(const LieSuperalgebraSpec& spec, const SuperTensor& t);

LambdaPoint point_from_json(const HCPair& pair, const std::string& text);
std::string point_to_json(const HCPair& pair, const LambdaPoint& p);

SuperfunctionSkeleton skeleton_from_json(const LieSuperalgebraSpec& spec,
                                         const std::string& text);
std::string skeleton_to_json(const LieSuperalgebraSpec& spec,
                             const SuperfunctionSkeleton& h);

HomForm homform_from_json(const LieSuperalgebraSpec& spec, const std::string& text);
std::string homform_to_json(const LieSuperalgebraSpec& spec, const HomForm& h);

// Word keys are normalized on load; each must reduce to a scalar multiple of
// a single PBW monomial, and duplicate keys must agree after normalization.
MomentFunctional moment_from_json(const LieSuperalgebraSpec& spec, const std::string& text);
std::string moment_to_json(const LieSuperalgebraSpec& spec, const MomentFunctional& lam);

}  // namespace sup
