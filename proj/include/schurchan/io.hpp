#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "schurchan/applications.hpp"
#include "schurchan/channels.hpp"
#include "schurchan/gt_paths.hpp"
#include "schurchan/streaming.hpp"
#include "schurchan/verify.hpp"

namespace schurchan {

using Json = nlohmann::json;

/// A dense complex matrix on disk: row-major [re, im] pairs plus optional
/// block annotations.
struct MatrixFile {
    MatC matrix;
    std::vector<Block> layout;
};

// Serializers picked up by nlohmann through ADL. Every from_json validates
// and throws ValidationError on malformed input.
void to_json(Json& j, const Staircase& s);
void from_json(const Json& j, Staircase& s);
void to_json(Json& j, const GtPath& p);
void from_json(const Json& j, GtPath& p);
void to_json(Json& j, const Block& b);
void from_json(const Json& j, Block& b);
void to_json(Json& j, const MatrixFile& f);
void from_json(const Json& j, MatrixFile& f);
void to_json(Json& j, const Assignment& a);
void from_json(const Json& j, Assignment& a);
void to_json(Json& j, const ExtremalSpec& s);
void from_json(const Json& j, ExtremalSpec& s);
void to_json(Json& j, const ExtremalTriple& t);
void from_json(const Json& j, ExtremalTriple& t);
void to_json(Json& j, const PathState& s);
void from_json(const Json& j, PathState& s);
void to_json(Json& j, const ScheduleStep& s);
void from_json(const Json& j, ScheduleStep& s);
void to_json(Json& j, const ResourceLedger& l);
void from_json(const Json& j, ResourceLedger& l);
void to_json(Json& j, const CostReport& c);
void from_json(const Json& j, CostReport& c);
void to_json(Json& j, const VerificationCase& c);
void from_json(const Json& j, VerificationCase& c);
void to_json(Json& j, const VerificationReport& r);
void from_json(const Json& j, VerificationReport& r);

/// Complex vectors as [[re, im], ...].
Json complex_array(const VecC& v);
VecC parse_complex_array(const Json& j);

/// Exact rationals as "p/q" strings.
Json distribution_json(const RemovalDistribution& dist);
RemovalDistribution parse_distribution(const Json& j);
Json histogram_json(const Histogram& h);
Histogram parse_histogram(const Json& j);

Json app_result_json(const AppResult& r);

/// Whole-file helpers; errors name the path.
Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);
MatC read_matrix(const std::string& path);
void write_matrix(const std::string& path, const MatC& m, const std::vector<Block>& layout = {});
ExtremalSpec read_spec(const std::string& path);

/// Two-space indented text.
std::string dump(const Json& j);

}  // namespace schurchan
