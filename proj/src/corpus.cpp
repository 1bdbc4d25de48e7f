#include "milnor/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "milnor/parser.hpp"
#include "milnor/points.hpp"
#include "milnor/spectral.hpp"

namespace milnor {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

bool parse_bool(const std::string& s) { return s == "true" || s == "1" || s == "yes" || s == "pass"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

CorpusEntry parse_corpus_entry(const std::string& text, const std::string& path) {
    CorpusEntry e;
    e.path = path;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw InputError(path + ":" + std::to_string(lineno) + ": expected 'key: value'");
        std::string key = trim(line.substr(0, colon));
        std::string val = trim(line.substr(colon + 1));

        if (key == "id") e.id = val;
        else if (key == "cite") e.cite = val;
        else if (key == "nvars") e.nvars = std::stoi(val);
        else if (key == "poly") e.poly = val;
        else if (key == "prime") e.prime = std::stoull(val);
        else if (key == "factors") {
            std::istringstream fs(val);
            std::string f;
            while (std::getline(fs, f, ';')) {
                f = trim(f);
                if (!f.empty()) e.factors.push_back(f);
            }
        } else if (key == "genera") e.genera = parse_int_list(val);
        else if (key == "r") e.r = std::stoi(val);
        else if (key == "wh") e.wh = parse_bool(val);
        else if (key == "nodes") {
            if (val == "none") e.empty_nodes = true;
            else e.nodes_file = val;
        } else if (key == "expect_series") {
            std::istringstream ss(val);
            std::string coeffs, tailtok, fromtok;
            ss >> coeffs >> tailtok >> fromtok;
            e.series_prefix = parse_int_list(coeffs);
            if (tailtok.rfind("tail=", 0) != 0 || fromtok.rfind("from=", 0) != 0)
                throw InputError(path + ": expect_series needs 'c0,..,ck tail=v from=s'");
            e.series_tail = std::stoi(tailtok.substr(5));
            e.series_from = std::stoi(fromtok.substr(5));
        } else if (key == "expect_tau") e.tau = std::stoi(val);
        else if (key == "expect_st") e.st = std::stoi(val);
        else if (key == "expect_ct") {
            if (val == "none") e.ct_none = true;
            else e.ct = std::stoi(val);
        } else if (key == "expect_mdr") {
            if (val == "none") e.mdr_none = true;
            else e.mdr = std::stoi(val);
        } else if (key == "expect_smooth_match") e.smooth_match = parse_bool(val);
        else if (key == "expect_e1_lineL") e.e1_lineL = parse_int_list(val);
        else if (key == "expect_e1_lineLp") e.e1_lineLp = parse_int_list(val);
        else if (key == "expect_d1rank") e.d1rank = parse_int_list(val);
        else if (key == "expect_e2_lineL") e.e2_lineL = parse_int_list(val);
        else if (key == "expect_e2_lineLp") e.e2_lineLp = parse_int_list(val);
        else if (key == "expect_defects") e.defects = parse_int_list(val);
        else if (key == "expect_cb") e.cb_pass = parse_bool(val);
        else if (key == "expect_corc1") e.corc1_pass = parse_bool(val);
        else if (key == "expect_curve_identity") e.curve_identity = std::stoi(val);
        else if (key == "expect_node_status") e.node_status = val;
        else if (key == "expect_syzygy") {
            std::istringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find("->");
                if (eq == std::string::npos) throw InputError(path + ": expect_syzygy needs 'm->q,...'");
                e.syzygy_dims[std::stoi(trim(item.substr(0, eq)))] = std::stoi(trim(item.substr(eq + 2)));
            }
        } else if (key == "expect_surface") {
            CorpusEntry::SurfaceExpect s;
            std::istringstream ss(val);
            std::string kv;
            while (ss >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw InputError(path + ": expect_surface needs key=value pairs");
                std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
                if (k == "pg") s.p_g = std::stoi(v);
                else if (k == "b2") s.b2 = std::stoi(v);
                else if (k == "h11") s.h11 = std::stoi(v);
                else if (k == "grP2") s.grP2 = std::stoi(v);
                else if (k == "grF2") s.grF2 = std::stoi(v);
                else if (k == "equalPF") s.equalPF = parse_bool(v);
                else throw InputError(path + ": unknown surface key '" + k + "'");
            }
            e.surface = s;
        } else if (key == "limit") e.limit_not_computed = (val == "not-computed");
        else if (key == "note") e.note = val;
        else throw InputError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (e.id.empty() || e.cite.empty() || e.poly.empty() || e.nvars == 0)
        throw InputError(path + ": corpus entry needs id, cite, nvars and poly");
    return e;
}

std::vector<CorpusEntry> load_corpus_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    if (!fs::is_directory(dir)) throw InputError("corpus directory not found: " + dir);
    for (const auto& de : fs::directory_iterator(dir)) {
        if (de.is_regular_file() && de.path().extension() == ".txt") files.push_back(de.path().string());
    }
    std::sort(files.begin(), files.end());
    std::vector<CorpusEntry> out;
    for (const auto& f : files) out.push_back(parse_corpus_entry(read_file(f), f));
    return out;
}

namespace {

template <class T>
std::string show_vec(const std::vector<T>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

template <class F>
void run_entry_typed(const CorpusEntry& e, const CtxPtr<F>& ctx, const LinalgOptions& opts,
                     EntryResult& res) {
    auto fail = [&res](const std::string& msg) { res.failures.push_back(msg); };

    auto f = parse_poly<F>(e.poly, ctx);
    std::vector<HomPoly<F>> factors;
    for (const auto& s : e.factors) factors.push_back(parse_poly<F>(s, ctx));
    auto input = Hypersurface<F>::make(f, factors, e.genera);

    auto report = analyze(input, opts);
    res.certified = res.certified && report.cert.certified;

    if (e.series_prefix) {
        for (std::size_t k = 0; k < e.series_prefix->size(); ++k)
            if (report.milnor.at(static_cast<int>(k)) != (*e.series_prefix)[k])
                fail("series coefficient " + std::to_string(k) + ": got " +
                     std::to_string(report.milnor.at(static_cast<int>(k))) + ", expected " +
                     std::to_string((*e.series_prefix)[k]));
        if (e.series_tail && report.milnor.tail != *e.series_tail)
            fail("series tail: got " + std::to_string(report.milnor.tail));
        if (e.series_from && report.milnor.tail_from != *e.series_from)
            fail("series stabilizes from " + std::to_string(report.milnor.tail_from) + ", expected " +
                 std::to_string(*e.series_from));
    }
    if (e.tau && report.tau != *e.tau) fail("tau: got " + std::to_string(report.tau));
    if (e.st && report.st != *e.st) fail("st: got " + std::to_string(report.st));
    if (e.ct && (!report.ct || *report.ct != *e.ct))
        fail("ct: got " + (report.ct ? std::to_string(*report.ct) : std::string("none")));
    if (e.ct_none && report.ct) fail("ct: expected none");
    if (e.mdr && (!report.mdr || *report.mdr != *e.mdr))
        fail("mdr: got " + (report.mdr ? std::to_string(*report.mdr) : std::string("none")));
    if (e.mdr_none && report.mdr) fail("mdr: expected none");
    if (e.smooth_match) {
        for (int k = 0; k <= report.milnor.bound; ++k)
            if (report.milnor.at(k) != report.smooth.at(k)) {
                fail("dimension table deviates from the smooth reference at degree " + std::to_string(k));
                break;
            }
    }

    std::optional<PointSet<F>> nodes;
    if (e.empty_nodes) nodes = PointSet<F>::make(ctx, {});
    if (!e.nodes_file.empty()) {
        namespace fs = std::filesystem;
        auto npath = fs::path(e.path).parent_path() / e.nodes_file;
        auto data = parse_point_file(read_file(npath.string()));
        nodes = points_from_strings<F>(ctx, data.coords);
    }

    bool nodes_verified = false;
    if (nodes) {
        auto statuses = verify_nodes(input.f, *nodes);
        nodes_verified = true;
        for (auto s : statuses)
            if (s != NodeStatus::Node) nodes_verified = false;
        if (e.node_status) {
            std::string got;
            for (std::size_t i = 0; i < statuses.size(); ++i) {
                if (i) got += ",";
                got += to_string(statuses[i]);
            }
            if (got != *e.node_status) fail("node statuses: got " + got);
        }
        if (e.defects) {
            auto table = defect_table(*nodes, static_cast<int>(e.defects->size()) - 1, opts);
            res.certified = res.certified && table.cert.certified;
            if (table.defects != *e.defects) fail("defects: got " + show_vec(table.defects));
        }
        if (e.cb_pass) {
            auto cb = cb_check(input, *nodes, report, opts);
            res.certified = res.certified && cb.cert.certified;
            if (cb.pass != *e.cb_pass)
                fail(std::string("bridge check: got ") + (cb.pass ? "pass" : "fail"));
        }
        if (e.corc1_pass) {
            if (!e.r) {
                fail("corc1 expectation needs r");
            } else {
                auto cc = corC1_check(input, *nodes, *e.r, opts);
                res.certified = res.certified && cc.cert.certified;
                if (cc.pass != *e.corc1_pass)
                    fail(std::string("component-count defect check: got ") + (cc.pass ? "pass" : "fail"));
            }
        }
    }

    bool need_e2 = e.d1rank || e.e2_lineL || e.e2_lineLp || e.curve_identity;
    if (e.e1_lineL || e.e1_lineLp || need_e2) {
        auto e1 = e1_table(report);
        if (e.e1_lineL && e1.lineL != *e.e1_lineL) fail("first page line L: got " + show_vec(e1.lineL));
        if (e.e1_lineLp && e1.lineLp != *e.e1_lineLp)
            fail("first page line L': got " + show_vec(e1.lineLp));
        if (need_e2) {
            bool degenerate = e.wh || (nodes && nodes_verified && report.tau == nodes->size());
            auto e2 = e2_table(input, report, degenerate, opts);
            res.certified = res.certified && e2.cert.certified;
            if (e.d1rank && e2.d1rank != *e.d1rank) fail("differential ranks: got " + show_vec(e2.d1rank));
            if (e.e2_lineL && e2.lineL2 != *e.e2_lineL)
                fail("second page line L: got " + show_vec(e2.lineL2));
            if (e.e2_lineLp && e2.lineLp2 != *e.e2_lineLp)
                fail("second page line L': got " + show_vec(e2.lineLp2));
            if (e.curve_identity) {
                if (!e.r) {
                    fail("curve identity needs r");
                } else {
                    auto cr = curve_report(input, report, e2, *e.r);
                    if (!cr.corB1_check || cr.identity_lhs != *e.curve_identity)
                        fail("curve filtration identity: got " + std::to_string(cr.identity_lhs) + "=" +
                             std::to_string(cr.identity_rhs));
                }
            }
        }
    }

    for (const auto& [m, q] : e.syzygy_dims) {
        auto syz = syzygy_space(input, m, opts);
        res.certified = res.certified && syz.cert.certified;
        if (syz.quotient_dim != q)
            fail("relation space in degree " + std::to_string(m) + ": got " +
                 std::to_string(syz.quotient_dim) + ", expected " + std::to_string(q));
    }

    if (e.surface) {
        if (!nodes) {
            fail("surface expectation needs a node list (possibly 'none')");
        } else {
            auto sr = surface_report(input, *nodes, report, opts);
            res.certified = res.certified && sr.cert.certified;
            const auto& s = *e.surface;
            if (sr.p_g != s.p_g || sr.b2 != s.b2 || sr.h11 != s.h11 || sr.grP2 != s.grP2 ||
                sr.grF2 != s.grF2 || sr.equalPF != s.equalPF)
                fail("surface report: got pg=" + std::to_string(sr.p_g) + " b2=" + std::to_string(sr.b2) +
                     " h11=" + std::to_string(sr.h11) + " grP2=" + std::to_string(sr.grP2) + " grF2=" +
                     std::to_string(sr.grF2) + " equalPF=" + (sr.equalPF ? "true" : "false"));
            if (sr.defect_2n4 != 0) fail("defect in degree 2N-4 is nonzero");
        }
    }
}

}  // namespace

EntryResult run_corpus_entry(const CorpusEntry& e, const LinalgOptions& opts) {
    EntryResult res;
    res.id = e.id;
    res.cite = e.cite;
    res.note = e.note;
    try {
        if (e.prime) {
            PFField fp(*e.prime);
            auto ctx = RingCtx<PFField>::make(e.nvars, fp);
            run_entry_typed<PFField>(e, ctx, opts, res);
        } else {
            auto ctx = RingCtx<QField>::make(e.nvars, QField{});
            run_entry_typed<QField>(e, ctx, opts, res);
        }
    } catch (const Error& err) {
        res.failures.push_back(std::string("error: ") + err.what());
    }
    res.pass = res.failures.empty();
    return res;
}

int verify_corpus(const std::string& dir, std::ostream& out, const LinalgOptions& opts) {
    auto entries = load_corpus_dir(dir);
    if (entries.empty()) throw InputError("no corpus entries found in " + dir);
    int failures = 0;
    for (const auto& e : entries) {
        auto res = run_corpus_entry(e, opts);
        out << (res.pass ? "[PASS] " : "[FAIL] ") << res.id << " (" << res.cite << ")";
        if (e.limit_not_computed) {
            out << " [limit: not computed";
            if (!res.note.empty()) out << "; reported: " << res.note;
            out << "]";
        }
        if (!res.certified) out << " [UNCERTIFIED]";
        out << "\n";
        for (const auto& fmsg : res.failures) out << "       " << fmsg << "\n";
        if (!res.pass || !res.certified) ++failures;
    }
    out << (failures == 0 ? "all entries pass" : std::to_string(failures) + " entries failed") << "\n";
    return failures;
}

}  // namespace milnor
