#include "isofib/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "isofib/errors.hpp"

namespace isofib {

const ConfigNode* ConfigNode::child(const std::string& k) const {
    for (const auto& c : children)
        if (c.key == k) return &c;
    return nullptr;
}

std::vector<const ConfigNode*> ConfigNode::all(const std::string& k) const {
    std::vector<const ConfigNode*> out;
    for (const auto& c : children)
        if (c.key == k) out.push_back(&c);
    return out;
}

ConfigNode parse_config_tree(const std::string& text) {
    ConfigNode root;
    std::vector<ConfigNode*> stack{&root};
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks.size() == 1 && toks[0] == "}") {
            if (stack.size() == 1)
                throw invalid_input("config line " + std::to_string(lineno) + ": unmatched '}'");
            stack.pop_back();
            continue;
        }
        bool open = toks.back() == "{";
        if (open) toks.pop_back();
        if (toks.empty())
            throw invalid_input("config line " + std::to_string(lineno) + ": '{' needs a key");
        ConfigNode node;
        node.key = toks[0];
        node.args.assign(toks.begin() + 1, toks.end());
        stack.back()->children.push_back(std::move(node));
        if (open) stack.push_back(&stack.back()->children.back());
    }
    if (stack.size() != 1) throw invalid_input("config: unclosed '{' block");
    return root;
}

namespace {

long to_long(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw invalid_input("config: expected an integer for " + what + ", got '" + s + "'");
    }
}

// cycles like (1,2,3)(4,5) or (1 2 3), read from the joined argument text
std::vector<std::vector<int>> parse_cycles(const std::string& text) {
    std::vector<std::vector<int>> cycles;
    std::vector<int> cur;
    bool in_cycle = false;
    std::string num;
    auto flush_num = [&]() {
        if (!num.empty()) {
            cur.push_back(static_cast<int>(to_long(num, "permutation letter")));
            num.clear();
        }
    };
    for (char ch : text) {
        if (ch == '(') {
            if (in_cycle) throw invalid_input("config: nested '(' in permutation cycles");
            in_cycle = true;
            cur.clear();
        } else if (ch == ')') {
            flush_num();
            if (!in_cycle || cur.empty())
                throw invalid_input("config: empty or unmatched permutation cycle");
            cycles.push_back(cur);
            in_cycle = false;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            num += ch;
        } else if (ch == ',' || ch == ' ' || ch == '\t') {
            flush_num();
        } else {
            throw invalid_input(std::string("config: unexpected '") + ch +
                                "' in permutation cycles");
        }
    }
    if (in_cycle) throw invalid_input("config: unterminated permutation cycle");
    if (cycles.empty()) throw invalid_input("config: permutation generator without cycles");
    return cycles;
}

}  // namespace

GroupSpec parse_group_spec(const ConfigNode& node) {
    if (node.args.empty()) throw invalid_input("config: group entry needs a kind");
    const std::string& kind = node.args[0];
    GroupSpec s;
    if (kind == "cyclic") {
        s.kind = GroupSpec::Kind::cyclic;
        if (node.args.size() < 2) throw invalid_input("config: cyclic needs an order");
        s.n = to_long(node.args[1], "cyclic order");
        if (node.args.size() > 2) s.gen_name = node.args[2];
    } else if (kind == "dihedral") {
        s.kind = GroupSpec::Kind::dihedral;
        if (node.args.size() < 2) throw invalid_input("config: dihedral needs the group order");
        s.n = to_long(node.args[1], "dihedral order");
    } else if (kind == "metacyclic") {
        s.kind = GroupSpec::Kind::metacyclic;
        if (node.args.size() < 4)
            throw invalid_input("config: metacyclic needs parameters a b c");
        s.a = to_long(node.args[1], "metacyclic a");
        s.b = to_long(node.args[2], "metacyclic b");
        s.c = to_long(node.args[3], "metacyclic c");
    } else if (kind == "product") {
        s.kind = GroupSpec::Kind::direct_product;
        for (const auto* f : node.all("factor")) s.factors.push_back(parse_group_spec(*f));
        if (s.factors.empty()) throw invalid_input("config: product needs factor entries");
    } else if (kind == "semidirect") {
        s.kind = GroupSpec::Kind::semidirect;
        const auto* actor = node.child("actor");
        if (!actor || actor->args.size() < 2)
            throw invalid_input("config: semidirect needs 'actor NAME ORDER'");
        s.actor_name = actor->args[0];
        s.actor_order = to_long(actor->args[1], "actor order");
        for (const auto* k : node.all("kernel")) {
            if (k->args.size() < 2)
                throw invalid_input("config: semidirect kernel entries are 'kernel ORDER NAME'");
            s.kernel_moduli.push_back(to_long(k->args[0], "kernel order"));
            s.kernel_names.push_back(k->args[1]);
        }
        if (s.kernel_moduli.empty())
            throw invalid_input("config: semidirect needs kernel entries");
        for (const auto& name : s.kernel_names) {
            bool found = false;
            for (const auto* a : node.all("action")) {
                if (a->args.size() >= 2 && a->args[0] == name) {
                    std::string word;
                    for (size_t i = 1; i < a->args.size(); ++i) word += a->args[i];
                    s.action_words.push_back(word);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw invalid_input("config: semidirect action missing for kernel generator '" +
                                    name + "'");
        }
    } else if (kind == "permutation") {
        s.kind = GroupSpec::Kind::permutation;
        if (node.args.size() < 2)
            throw invalid_input("config: permutation needs the letter count");
        s.n = to_long(node.args[1], "permutation letters");
        for (const auto* g : node.all("gen")) {
            if (g->args.size() < 2)
                throw invalid_input("config: permutation generators are 'gen NAME (cycles)'");
            std::string cyc;
            for (size_t i = 1; i < g->args.size(); ++i) cyc += g->args[i];
            s.perm_gens.emplace_back(g->args[0], parse_cycles(cyc));
        }
        if (s.perm_gens.empty())
            throw invalid_input("config: permutation group needs gen entries");
    } else {
        throw invalid_input("config: unknown group kind '" + kind + "'");
    }
    return s;
}

namespace {

std::string render_group_text(const ConfigNode& node) {
    std::string out = "group";
    for (const auto& a : node.args) out += " " + a;
    if (!node.children.empty()) {
        out += " { ";
        for (const auto& c : node.children) {
            out += c.key;
            for (const auto& a : c.args) out += " " + a;
            out += "; ";
        }
        out += "}";
    }
    return out;
}

CoverConfig parse_cover(const ConfigNode& node, const std::string& name) {
    CoverConfig cc;
    if (const auto* bg = node.child("base_genus")) {
        if (bg->args.empty()) throw invalid_input("config: base_genus needs a value");
        cc.base_genus = static_cast<int>(to_long(bg->args[0], "base_genus"));
        if (cc.base_genus < 0) throw invalid_input("config: base_genus must be >= 0");
    }
    if (const auto* p = node.child("periods"))
        for (const auto& a : p->args)
            cc.periods.push_back(static_cast<int>(to_long(a, "period")));
    if (const auto* v = node.child("vector")) {
        std::string text;
        for (const auto& a : v->args) text += a;
        cc.vector_text = text;
    }
    if (const auto* e = node.child("enumerate")) {
        cc.enumerate = true;
        // block form with child entries, or flat 'enumerate max_points N max_period M'
        if (const auto* mp = e->child("max_points"))
            cc.max_points = static_cast<int>(to_long(mp->args.at(0), "max_points"));
        if (const auto* mm = e->child("max_period"))
            cc.max_period = static_cast<int>(to_long(mm->args.at(0), "max_period"));
        for (size_t i = 0; i + 1 < e->args.size(); i += 2) {
            if (e->args[i] == "max_points")
                cc.max_points = static_cast<int>(to_long(e->args[i + 1], "max_points"));
            else if (e->args[i] == "max_period")
                cc.max_period = static_cast<int>(to_long(e->args[i + 1], "max_period"));
            else
                throw invalid_input("config: unknown enumerate option '" + e->args[i] + "'");
        }
        if (cc.max_points < 0 || cc.max_period < 2)
            throw invalid_input("config: enumerate blocks need max_points >= 0 and "
                                "max_period >= 2 in " + name);
    }
    if (cc.enumerate == !cc.vector_text.empty())
        throw invalid_input("config: " + name +
                            " needs exactly one of an explicit vector or an enumerate block");
    return cc;
}

}  // namespace

AnalysisConfig parse_config(const std::string& text) {
    ConfigNode root = parse_config_tree(text);
    AnalysisConfig cfg;

    std::vector<const ConfigNode*> group_nodes = root.all("group");
    const auto* catalog = root.child("catalog");
    if (catalog) {
        auto more = catalog->all("group");
        group_nodes.insert(group_nodes.end(), more.begin(), more.end());
    }
    for (const auto* g : group_nodes) {
        cfg.groups.push_back(parse_group_spec(*g));
        cfg.group_texts.push_back(render_group_text(*g));
    }
    // an explicitly empty catalog is a valid (empty) search space
    if (cfg.groups.empty() && !catalog) throw invalid_input("config: no group entries");

    const auto* c1 = root.child("cover1");
    const auto* c2 = root.child("cover2");
    if (!c1 || !c2) throw invalid_input("config: cover1 and cover2 blocks are required");
    cfg.cover1 = parse_cover(*c1, "cover1");
    cfg.cover2 = parse_cover(*c2, "cover2");

    if (const auto* bc = root.child("base_choice")) {
        cfg.base_choice = static_cast<int>(to_long(bc->args.at(0), "base_choice"));
        if (cfg.base_choice != 1 && cfg.base_choice != 2)
            throw invalid_input("config: base_choice must be 1 or 2");
    }
    if (const auto* fmt = root.child("format")) {
        cfg.format = fmt->args.at(0);
        if (cfg.format != "text" && cfg.format != "json" && cfg.format != "csv")
            throw invalid_input("config: format must be text, json or csv");
    }
    if (const auto* f = root.child("filter")) {
        if (const auto* pg = f->child("pg")) cfg.filter.pg = to_long(pg->args.at(0), "pg");
        if (const auto* q = f->child("q")) cfg.filter.q = to_long(q->args.at(0), "q");
        if (const auto* k2 = f->child("K2")) cfg.filter.K2 = to_long(k2->args.at(0), "K2");
        if (const auto* mg = f->child("min_genus"))
            cfg.filter.min_genus = static_cast<int>(to_long(mg->args.at(0), "min_genus"));
    }
    if (const auto* j = root.child("jobs"))
        cfg.jobs = static_cast<int>(to_long(j->args.at(0), "jobs"));
    if (const auto* nb = root.child("node_budget")) {
        long v = to_long(nb->args.at(0), "node_budget");
        if (v <= 0) throw invalid_input("config: node_budget must be positive");
        cfg.node_budget = static_cast<std::uint64_t>(v);
    }
    if (const auto* mo = root.child("max_group_order")) {
        cfg.max_group_order = static_cast<int>(to_long(mo->args.at(0), "max_group_order"));
        if (cfg.max_group_order <= 0)
            throw invalid_input("config: max_group_order must be positive");
    }
    return cfg;
}

AnalysisConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace isofib
