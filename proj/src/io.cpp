#include "fcwf/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "fcwf/error.hpp"

namespace fcwf {

namespace {

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#')
            ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

struct Located {
    std::size_t line;
    Token token;
};

} // namespace

NetDocument parse(std::string_view text) {
    NetDocument doc;
    std::vector<std::pair<Located, NodeKind>> declarations;
    std::vector<std::pair<Located, Located>> arcs;
    std::optional<std::pair<std::size_t, std::vector<Token>>> marking;
    bool named = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty())
            continue;
        const std::string &directive = tokens[0].text;
        if (directive == "net") {
            if (named)
                throw ParseError(line_no, tokens[0].column, "duplicate 'net' line");
            if (tokens.size() != 2)
                throw ParseError(line_no, tokens[0].column, "expected 'net <name>'");
            if (!is_identifier(tokens[1].text))
                throw ParseError(line_no, tokens[1].column, "invalid net name '" + tokens[1].text + "'");
            doc.name = tokens[1].text;
            named = true;
        } else if (directive == "places" || directive == "transitions") {
            NodeKind kind = directive == "places" ? NodeKind::place : NodeKind::transition;
            for (std::size_t i = 1; i < tokens.size(); ++i)
                declarations.push_back({{line_no, tokens[i]}, kind});
        } else if (directive == "arc") {
            if (tokens.size() != 4 || tokens[2].text != "->")
                throw ParseError(line_no, tokens[0].column, "expected 'arc <id> -> <id>'");
            arcs.push_back({{line_no, tokens[1]}, {line_no, tokens[3]}});
        } else if (directive == "marking") {
            if (marking)
                throw ParseError(line_no, tokens[0].column, "more than one 'marking' line");
            marking.emplace(line_no, std::vector<Token>(tokens.begin() + 1, tokens.end()));
        } else {
            throw ParseError(line_no, tokens[0].column, "unknown directive '" + directive + "'");
        }
    }

    NetBuilder builder;
    for (const auto &[where, kind] : declarations) {
        if (!is_identifier(where.token.text))
            throw ParseError(where.line, where.token.column, "invalid identifier '" + where.token.text + "'");
        if (builder.find(where.token.text))
            throw ParseError(where.line, where.token.column, "duplicate node '" + where.token.text + "'");
        builder.add_node(kind, where.token.text);
    }
    auto endpoint = [&](const Located &where) {
        auto node = builder.find(where.token.text);
        if (!node)
            throw ParseError(where.line, where.token.column, "unknown node '" + where.token.text + "'");
        return *node;
    };
    for (const auto &[from, to] : arcs) {
        NodeRef source = endpoint(from), target = endpoint(to);
        if (source.kind == target.kind)
            throw ParseError(from.line, from.token.column,
                             "arc connects two " + std::string(source.kind == NodeKind::place ? "places" : "transitions"));
        if (builder.has_arc(source, target))
            throw ParseError(from.line, from.token.column,
                             "duplicate arc " + from.token.text + " -> " + to.token.text);
        builder.add_arc(source, target);
    }
    doc.net = std::move(builder).build();

    if (marking) {
        Marking m(doc.net.place_count(), 0);
        std::set<Index> seen;
        for (const Token &entry : marking->second) {
            std::size_t colon = entry.text.find(':');
            if (colon == std::string::npos)
                throw ParseError(marking->first, entry.column, "expected '<place>:<count>'");
            std::string name = entry.text.substr(0, colon);
            auto node = doc.net.find(name);
            if (!node)
                throw ParseError(marking->first, entry.column, "unknown node '" + name + "'");
            if (node->kind != NodeKind::place)
                throw ParseError(marking->first, entry.column, "'" + name + "' is not a place");
            const char *first = entry.text.data() + colon + 1, *last = entry.text.data() + entry.text.size();
            Tokens count = 0;
            auto [ptr, ec] = std::from_chars(first, last, count);
            if (ec != std::errc() || ptr != last || first == last)
                throw ParseError(marking->first, entry.column + colon + 1, "invalid token count");
            if (!seen.insert(node->index).second)
                throw ParseError(marking->first, entry.column, "place '" + name + "' marked twice");
            m[node->index] = count;
        }
        doc.initial_marking = std::move(m);
    }
    return doc;
}

NetDocument read_document(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::invalid_argument, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string serialize(const NetDocument &doc) {
    const Net &net = doc.net;
    std::ostringstream out;
    out << "net " << doc.name << '\n';
    if (net.place_count() > 0) {
        out << "places";
        for (Index s = 0; s < net.place_count(); ++s)
            out << ' ' << net.place_name(s);
        out << '\n';
    }
    if (net.transition_count() > 0) {
        out << "transitions";
        for (Index t = 0; t < net.transition_count(); ++t)
            out << ' ' << net.transition_name(t);
        out << '\n';
    }
    for (const Arc &arc : net.arcs())
        out << "arc " << net.name(arc.source) << " -> " << net.name(arc.target) << '\n';
    if (doc.initial_marking) {
        out << "marking";
        for (Index s = 0; s < net.place_count(); ++s)
            if ((*doc.initial_marking)[s] > 0)
                out << ' ' << net.place_name(s) << ':' << (*doc.initial_marking)[s];
        out << '\n';
    }
    return out.str();
}

std::string to_dot(const NetDocument &doc) {
    const Net &net = doc.net;
    std::ostringstream out;
    out << "digraph " << doc.name << " {\n";
    for (Index s = 0; s < net.place_count(); ++s) {
        out << "  " << net.place_name(s) << " [shape=circle, label=\"" << net.place_name(s);
        if (doc.initial_marking)
            out << " (" << (*doc.initial_marking)[s] << ")";
        out << "\"];\n";
    }
    for (Index t = 0; t < net.transition_count(); ++t)
        out << "  " << net.transition_name(t) << " [shape=box];\n";
    for (const Arc &arc : net.arcs())
        out << "  " << net.name(arc.source) << " -> " << net.name(arc.target) << ";\n";
    out << "}\n";
    return out.str();
}

Json names_json(const Net &net, const NodeSet &nodes) { return Json(node_names(net, nodes)); }

Json to_json(const Net &net, const Component &component) {
    Json kind{{"side", to_string(component.kind.side)}, {"status", to_string(component.kind.status)}};
    if (component.kind.is_proper()) {
        kind["type1"] = component.kind.type1;
        kind["type2"] = component.kind.type2;
    }
    Json excessive = Json::array(), boundary = Json::array();
    for (NodeRef node : component.evidence.excessive)
        excessive.push_back(net.name(node));
    for (const Arc &arc : component.evidence.boundary)
        boundary.push_back(Json::array({net.name(arc.source), net.name(arc.target)}));
    Json evidence{{"excessive", excessive}, {"boundary", boundary}};
    if (component.evidence.trigger)
        evidence["trigger"] = net.name(*component.evidence.trigger);
    return Json{{"nodes", names_json(net, component.nodes)}, {"kind", kind}, {"evidence", evidence}};
}

Json to_json(const Net &net, const WellFormednessVerdict &verdict) {
    Json out{{"answer", to_string(verdict.answer)}};
    if (verdict.answer == Answer::yes) {
        Json cover = Json::array();
        for (const Component &c : verdict.t_cover)
            cover.push_back(names_json(net, c.nodes));
        out["cover"] = cover;
    }
    if (verdict.witness)
        out["witness"] = to_json(net, *verdict.witness);
    if (verdict.refusal)
        out["refusal"] = Json{{"source", names_json(net, verdict.refusal->source)},
                              {"bottom", names_json(net, verdict.refusal->bottom)}};
    return out;
}

Json to_json(const Net &net, const MaxTrapResult &result) {
    Json layers = Json::array();
    for (const auto &layer : result.layers) {
        Json names = Json::array();
        for (Index t : layer)
            names.push_back(net.transition_name(t));
        layers.push_back(names);
    }
    Json exit_index = Json::object();
    for (Index t : net.transitions_by_name())
        if (result.exit_index[t] > 0)
            exit_index[net.transition_name(t)] = result.exit_index[t];
    return Json{{"trap", place_names(net, result.trap)}, {"layers", layers}, {"exit_index", exit_index}};
}

Json to_json(const Net &net, const CommonerVerdict &verdict) {
    Json out{{"answer", verdict.live ? "live" : "not-live"}};
    if (verdict.witness_siphon)
        out["siphon"] = place_names(net, *verdict.witness_siphon);
    return out;
}

} // namespace fcwf
