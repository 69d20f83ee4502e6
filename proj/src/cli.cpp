#include "fcwf/cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "fcwf/components.hpp"
#include "fcwf/error.hpp"
#include "fcwf/free_choice.hpp"
#include "fcwf/io.hpp"
#include "fcwf/oracle.hpp"
#include "fcwf/siphon_trap.hpp"
#include "fcwf/wellformed.hpp"

namespace fcwf {

namespace {

std::string braces(const std::vector<std::string> &names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? ", " : "") + names[i];
    return out + "}";
}

std::string describe(const Net &net, const Component &c) {
    std::string text = braces(node_names(net, c.nodes)) + " " + to_string(c.kind.status);
    if (c.kind.is_proper()) {
        std::vector<std::string> types;
        if (c.kind.type1)
            types.push_back("type I");
        if (c.kind.type2)
            types.push_back("type II");
        text += " (" + types.front() + (types.size() > 1 ? ", " + types.back() : "") + ")";
    }
    return text;
}

struct Options {
    std::string file;
    bool json = false;
    std::string places;
    std::size_t cap = default_siphon_cap;
    std::size_t max_states = default_state_cap;
    bool live = false, bounded = false, wf = false;
};

int check_fc(const NetDocument &doc, const Options &o, std::ostream &out) {
    bool fc = is_free_choice(doc.net);
    if (o.json)
        out << Json{{"answer", fc ? "yes" : "no"}}.dump() << '\n';
    else
        out << (fc ? "free-choice" : "not free-choice") << '\n';
    return fc ? exit_yes : exit_no;
}

int show_clusters(const NetDocument &doc, const Options &o, std::ostream &out) {
    ClusterPartition partition = clusters(doc.net);
    Json list = Json::array();
    for (std::size_t c = 0; c < partition.size(); ++c) {
        auto names = node_names(doc.net, partition.nodes(doc.net, c));
        if (o.json)
            list.push_back(names);
        else
            out << braces(names) << '\n';
    }
    if (o.json)
        out << Json{{"clusters", list}}.dump() << '\n';
    return exit_yes;
}

int well_formed(const NetDocument &doc, const Options &o, std::ostream &out) {
    WellFormednessVerdict v = decide_well_formed(doc.net);
    if (o.json) {
        out << to_json(doc.net, v).dump() << '\n';
    } else {
        out << to_string(v.answer) << '\n';
        for (const Component &c : v.t_cover)
            out << "T-component " << braces(node_names(doc.net, c.nodes)) << '\n';
        if (v.witness) {
            out << "witness " << describe(doc.net, *v.witness) << '\n';
            if (v.witness->evidence.trigger)
                out << "exposed by removing " << doc.net.name(*v.witness->evidence.trigger) << '\n';
        }
        if (v.refusal)
            out << "bottom SCC " << braces(node_names(doc.net, v.refusal->bottom)) << " is entered from "
                << braces(node_names(doc.net, v.refusal->source)) << '\n';
    }
    return v.answer == Answer::yes ? exit_yes : exit_no;
}

int cover(const NetDocument &doc, const Options &o, std::ostream &out, bool t_side) {
    auto members = t_side ? semi_t_cover(doc.net) : semi_s_cover(doc.net);
    if (o.json) {
        Json list = Json::array();
        for (const Component &c : members)
            list.push_back(to_json(doc.net, c));
        out << Json{{"cover", list}}.dump() << '\n';
    } else {
        for (const Component &c : members)
            out << describe(doc.net, c) << '\n';
    }
    return exit_yes;
}

int reverse(const NetDocument &doc, const Options &o, std::ostream &out) {
    NetDocument dual{doc.name, reverse_dual(doc.net), std::nullopt};
    if (o.json)
        out << Json{{"document", serialize(dual)}}.dump() << '\n';
    else
        out << serialize(dual);
    return exit_yes;
}

int trap(const NetDocument &doc, const Options &o, std::ostream &out) {
    std::vector<std::string> names;
    std::string item;
    for (char ch : o.places + ",") {
        if (ch == ',') {
            if (!item.empty())
                names.push_back(item);
            item.clear();
        } else if (ch != ' ') {
            item += ch;
        }
    }
    MaxTrapResult r = maximal_trap(doc.net, place_set(doc.net, names));
    if (o.json) {
        out << to_json(doc.net, r).dump() << '\n';
    } else {
        out << "trap " << braces(place_names(doc.net, r.trap)) << '\n';
        for (std::size_t i = 0; i < r.layers.size(); ++i) {
            std::vector<std::string> layer;
            for (Index t : r.layers[i])
                layer.push_back(doc.net.transition_name(t));
            out << "layer " << i + 1 << ' ' << braces(layer) << '\n';
        }
    }
    return exit_yes;
}

int siphons(const NetDocument &doc, const Options &o, std::ostream &out) {
    auto list = minimal_siphons(doc.net, o.cap);
    if (o.json) {
        Json arr = Json::array();
        for (const auto &s : list)
            arr.push_back(place_names(doc.net, s));
        out << Json{{"siphons", arr}}.dump() << '\n';
    } else {
        for (const auto &s : list)
            out << braces(place_names(doc.net, s)) << '\n';
    }
    return exit_yes;
}

const Marking &document_marking(const NetDocument &doc) {
    if (!doc.initial_marking)
        throw Error(ErrorCode::invalid_argument, "the document has no marking line");
    return *doc.initial_marking;
}

int commoner(const NetDocument &doc, const Options &o, std::ostream &out) {
    CommonerVerdict v = commoner_live(doc.net, document_marking(doc), o.cap);
    if (o.json) {
        out << to_json(doc.net, v).dump() << '\n';
    } else {
        out << (v.live ? "live" : "not live") << '\n';
        if (v.witness_siphon)
            out << "siphon without marked trap " << braces(place_names(doc.net, *v.witness_siphon)) << '\n';
    }
    return v.live ? exit_yes : exit_no;
}

int oracle(const NetDocument &doc, Options o, std::ostream &out) {
    if (!o.live && !o.bounded && !o.wf)
        o.bounded = true;
    Json report = Json::object();
    int code = exit_yes;
    auto merge = [&code](int c) {
        if (c == exit_inconclusive || code == exit_inconclusive)
            code = exit_inconclusive;
        else
            code = std::max(code, c);
    };
    if (o.live || o.bounded) {
        BoundednessVerdict v = explore(doc.net, document_marking(doc), o.max_states);
        if (o.bounded) {
            report["bounded"] = to_string(v.outcome);
            if (v.outcome == Boundedness::unbounded) {
                report["path"] = sequence_names(doc.net, v.path);
                report["pumping"] = sequence_names(doc.net, v.pumping());
            } else if (v.outcome == Boundedness::bounded) {
                report["states"] = v.graph.states.size();
            }
            merge(v.outcome == Boundedness::bounded     ? exit_yes
                  : v.outcome == Boundedness::unbounded ? exit_no
                                                        : exit_inconclusive);
        }
        if (o.live) {
            if (v.outcome != Boundedness::bounded) {
                report["live"] = "inconclusive";
                merge(exit_inconclusive);
            } else {
                auto verdicts = liveness(doc.net, v.graph);
                Json per = Json::object();
                for (Index t : doc.net.transitions_by_name())
                    per[doc.net.transition_name(t)] = to_string(verdicts[t]);
                report["live"] = all_live(verdicts) ? "live" : "not-live";
                report["transitions"] = per;
                merge(all_live(verdicts) ? exit_yes : exit_no);
            }
        }
    }
    if (o.wf) {
        OracleAnswer a = oracle_well_formed(doc.net, o.max_states);
        report["wf"] = to_string(a);
        merge(a == OracleAnswer::yes ? exit_yes : a == OracleAnswer::no ? exit_no : exit_inconclusive);
    }
    if (o.json) {
        out << report.dump() << '\n';
    } else {
        for (const auto &[key, value] : report.items())
            out << key << ' ' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
    return code;
}

int dot(const NetDocument &doc, const Options &o, std::ostream &out) {
    if (o.json)
        out << Json{{"dot", to_dot(doc)}}.dump() << '\n';
    else
        out << to_dot(doc);
    return exit_yes;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Free-choice Petri net well-formedness toolkit", "fcwf"};
    app.require_subcommand(1);
    Options o;

    auto command = [&](const std::string &name, const std::string &help) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("FILE", o.file, "net document")->required();
        sub->add_flag("--json", o.json, "JSON output");
        return sub;
    };
    CLI::App *check_fc_cmd = command("check-fc", "test the free-choice property");
    CLI::App *clusters_cmd = command("clusters", "list clusters");
    CLI::App *wf_cmd = command("wf", "decide well-formedness");
    CLI::App *tcover_cmd = command("tcover", "cover by semi-T-components");
    CLI::App *scover_cmd = command("scover", "cover by semi-S-components");
    CLI::App *rd_cmd = command("rd", "print the reverse-dual net");
    CLI::App *trap_cmd = command("trap", "maximal trap inside a place set");
    trap_cmd->add_option("--places", o.places, "comma separated places")->required();
    CLI::App *siphons_cmd = command("siphons", "enumerate minimal siphons");
    siphons_cmd->add_option("--cap", o.cap, "maximum number of siphons");
    CLI::App *commoner_cmd = command("commoner", "siphon-trap liveness check of the document marking");
    commoner_cmd->add_option("--cap", o.cap, "maximum number of siphons");
    CLI::App *oracle_cmd = command("oracle", "explicit state-space checks");
    oracle_cmd->add_option("--max-states", o.max_states, "state cap");
    oracle_cmd->add_flag("--live", o.live, "liveness of the document marking");
    oracle_cmd->add_flag("--bounded", o.bounded, "boundedness of the document marking");
    oracle_cmd->add_flag("--wf", o.wf, "well-formedness via the all-ones marking");
    CLI::App *dot_cmd = command("dot", "Graphviz export");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return exit_yes;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_yes;
    } catch (const CLI::ParseError &e) {
        err << "fcwf: " << e.what() << '\n';
        return exit_input_error;
    }

    try {
        NetDocument doc = read_document(o.file);
        if (check_fc_cmd->parsed())
            return check_fc(doc, o, out);
        if (clusters_cmd->parsed())
            return show_clusters(doc, o, out);
        if (wf_cmd->parsed())
            return well_formed(doc, o, out);
        if (tcover_cmd->parsed())
            return cover(doc, o, out, true);
        if (scover_cmd->parsed())
            return cover(doc, o, out, false);
        if (rd_cmd->parsed())
            return reverse(doc, o, out);
        if (trap_cmd->parsed())
            return trap(doc, o, out);
        if (siphons_cmd->parsed())
            return siphons(doc, o, out);
        if (commoner_cmd->parsed())
            return commoner(doc, o, out);
        if (oracle_cmd->parsed())
            return oracle(doc, o, out);
        if (dot_cmd->parsed())
            return dot(doc, o, out);
    } catch (const Error &e) {
        err << "fcwf: " << to_string(e.code()) << ": " << e.what() << '\n';
        return e.code() == ErrorCode::enumeration_overflow ? exit_inconclusive : exit_input_error;
    }
    return exit_input_error;
}

} // namespace fcwf
