#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fcwf/components.hpp"
#include "fcwf/net.hpp"
#include "fcwf/oracle.hpp"
#include "fcwf/siphon_trap.hpp"
#include "fcwf/wellformed.hpp"

namespace fcwf {

struct NetDocument {
    std::string name = "net";
    Net net;
    std::optional<Marking> initial_marking;

    bool operator==(const NetDocument &) const = default;
};

// Line-oriented format:
//   net <name>
//   places <id> ...
//   transitions <id> ...
//   arc <id> -> <id>
//   marking <id>:<count> ...
// '#' starts a comment. Throws ParseError with 1-based line and column.
NetDocument parse(std::string_view text);
NetDocument read_document(const std::string &path);

// Canonical text: declaration order for nodes, canonical arc order, nonzero
// marking entries only.
std::string serialize(const NetDocument &doc);

std::string to_dot(const NetDocument &doc);

using Json = nlohmann::ordered_json;

Json names_json(const Net &net, const NodeSet &nodes);
Json to_json(const Net &net, const Component &component);
Json to_json(const Net &net, const WellFormednessVerdict &verdict);
Json to_json(const Net &net, const MaxTrapResult &result);
Json to_json(const Net &net, const CommonerVerdict &verdict);

} // namespace fcwf
