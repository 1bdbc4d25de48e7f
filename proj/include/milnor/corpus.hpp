#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "milnor/linalg.hpp"

namespace milnor {

// One reference instance: the input hypersurface plus every expected value,
// each carrying its citation into the source tables.
struct CorpusEntry {
    std::string id;
    std::string cite;
    std::string path;  // file the entry came from; node files resolve next to it

    int nvars = 0;
    std::string poly;
    std::optional<std::uint64_t> prime;  // run the whole pipeline in F_p
    std::vector<std::string> factors;
    std::vector<int> genera;
    std::optional<int> r;
    bool wh = false;  // weighted homogeneous assertion (degenerate second page)
    std::string nodes_file;
    bool empty_nodes = false;  // "nodes: none" - assert an empty node set

    std::optional<std::vector<int>> series_prefix;
    std::optional<int> series_tail;
    std::optional<int> series_from;
    std::optional<int> tau;
    std::optional<int> st;
    std::optional<int> ct;
    std::optional<int> mdr;
    bool ct_none = false;
    bool mdr_none = false;
    bool smooth_match = false;

    std::optional<std::vector<int>> e1_lineL;
    std::optional<std::vector<int>> e1_lineLp;
    std::optional<std::vector<int>> d1rank;
    std::optional<std::vector<int>> e2_lineL;
    std::optional<std::vector<int>> e2_lineLp;

    std::optional<std::vector<int>> defects;
    std::optional<bool> cb_pass;
    std::optional<bool> corc1_pass;
    std::optional<int> curve_identity;
    std::optional<std::string> node_status;  // comma-separated expected statuses
    std::map<int, int> syzygy_dims;          // relation degree -> quotient dim

    struct SurfaceExpect {
        int p_g = 0, b2 = 0, h11 = 0, grP2 = 0, grF2 = 0;
        bool equalPF = false;
    };
    std::optional<SurfaceExpect> surface;

    bool limit_not_computed = false;
    std::string note;  // reported values that are recorded, not recomputed
};

CorpusEntry parse_corpus_entry(const std::string& text, const std::string& path);
std::vector<CorpusEntry> load_corpus_dir(const std::string& dir);

struct EntryResult {
    std::string id;
    std::string cite;
    bool pass = false;
    bool certified = true;
    std::vector<std::string> failures;
    std::string note;
};

EntryResult run_corpus_entry(const CorpusEntry& entry, const LinalgOptions& opts);

// Runs every entry in the directory; prints one pass/fail line per entry with
// its citation. Returns the number of failing entries.
int verify_corpus(const std::string& dir, std::ostream& out, const LinalgOptions& opts = {});

}  // namespace milnor
