#pragma once

#include <json.hpp>

#include "rearr/averaging.hpp"
#include "rearr/partition.hpp"
#include "rearr/regularity.hpp"
#include "rearr/step_function.hpp"

namespace rearr {

using json = nlohmann::json;

// StepFunction: {"breakpoints": ["1","1/2",...], "values": ["5","2",...]}
json to_json(const StepFunction& f);
StepFunction step_from_json(const json& j);

// {"kind":"geometric","p":"1/2"} | {"kind":"dyadic_exp","exponents":[0,1,4,...]}
// | {"kind":"dyadic_exp","rule":"square"|"linear"} | {"kind":"explicit","points":[...]}
// | {"kind":"clustered","clusters":n}
json to_json(const IntervalPartition& b, long depth_hint = 32);
IntervalPartition partition_from_json(const json& j);

// {"rule": {"kind": "const"|"geometric"|"pow2_over_square"|"linear"|"explicit", ...}, "depth": n}
struct FamilySpec {
  DyadicFamily family;
  long depth = 0;
};
FamilySpec family_from_json(const json& j);

// {"kind":"const","c":2} | {"kind":"affine","a":1,"b":0} | {"kind":"square"}
// | {"kind":"explicit","values":[...]}
// | {"kind":"transform","name":"verifying_witness"|"nonuniversal_witness",
//    "exponents":[0,1,4,...] or "exponent_rule":"square", "depth":n}
QSequence qsequence_from_json(const json& j);

// {"weights": ["1/3","2/3"], "functions": [<StepFunction>, ...]}
json to_json(const JointRealization& jr);
JointRealization joint_from_json(const json& j);

}  // namespace rearr
