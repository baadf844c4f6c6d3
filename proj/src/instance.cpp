#include "icb/instance.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace icb {

std::vector<int> members(Subset s) {
    std::vector<int> out;
    while (s) {
        int i = lowest(s);
        out.push_back(i);
        s &= s - 1;
    }
    return out;
}

std::vector<int> to_external(Subset s) {
    std::vector<int> out = members(s);
    for (int& i : out) ++i;
    return out;
}

std::string subset_to_string(Subset s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int i : to_external(s)) {
        if (!first) os << ',';
        os << i;
        first = false;
    }
    os << '}';
    return os.str();
}

Instance::Instance(int n, std::vector<Subset> side_info)
    : n_(n), side_info_(std::move(side_info)) {
    if (n < 1 || n > kMaxMessages)
        throw std::invalid_argument("message count must be in [1, 64], got " +
                                    std::to_string(n));
    if (static_cast<int>(side_info_.size()) != n)
        throw std::invalid_argument("side information list has wrong length");
    const Subset full = full_set(n);
    interfering_.resize(n);
    for (int i = 0; i < n; ++i) {
        if (side_info_[i] & ~full)
            throw std::invalid_argument("side information of message " +
                                        std::to_string(i + 1) + " out of range");
        if (contains(side_info_[i], i))
            throw std::invalid_argument("message " + std::to_string(i + 1) +
                                        " listed in its own side information");
        interfering_[i] = full & ~(side_info_[i] | bit(i));
    }
}

bool Instance::is_acyclic(Subset s) const {
    // Kahn's algorithm on the induced subgraph: peel vertices whose
    // remaining predecessors (the side information they appear in) are gone.
    Subset remaining = s;
    bool progress = true;
    while (remaining && progress) {
        progress = false;
        Subset scan = remaining;
        while (scan) {
            int j = lowest(scan);
            scan &= scan - 1;
            if ((side_info_[j] & remaining) == 0) {
                remaining &= ~bit(j);
                progress = true;
            }
        }
    }
    return remaining == 0;
}

namespace {

struct Entry {
    int index = 0;       // 1-based, as written
    Subset set = 0;      // 0-based mask, unvalidated range
    int position = 0;    // 1-based entry position in the text
};

[[noreturn]] void fail(int position, const std::string& what) {
    throw ParseError("entry " + std::to_string(position) + ": " + what);
}

// Grammar: entries "(" index "|" ( "-" | index-list ) ")" separated by
// commas and/or whitespace.
std::vector<Entry> scan_entries(std::string_view text) {
    std::vector<Entry> entries;
    std::size_t pos = 0;
    auto skip_filler = [&] {
        while (pos < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
            ++pos;
    };
    auto read_int = [&](int entry_pos) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start) fail(entry_pos, "expected an index");
        if (pos - start > 2) fail(entry_pos, "index too large");
        return std::stoi(std::string(text.substr(start, pos - start)));
    };
    while (true) {
        skip_filler();
        if (pos >= text.size()) break;
        int entry_pos = static_cast<int>(entries.size()) + 1;
        if (text[pos] != '(') fail(entry_pos, "expected '('");
        ++pos;
        skip_filler();
        Entry e;
        e.position = entry_pos;
        e.index = read_int(entry_pos);
        skip_filler();
        if (pos >= text.size() || text[pos] != '|') fail(entry_pos, "expected '|'");
        ++pos;
        skip_filler();
        if (pos < text.size() && text[pos] == '-') {
            ++pos;
        } else {
            while (true) {
                int v = read_int(entry_pos);
                if (v < 1 || v > kMaxMessages) fail(entry_pos, "index out of range");
                if (contains(e.set, v - 1)) fail(entry_pos, "duplicate index in set");
                e.set |= bit(v - 1);
                skip_filler();
                if (pos < text.size() && text[pos] == ')') break;
                if (pos >= text.size()) fail(entry_pos, "expected ')'");
            }
        }
        skip_filler();
        if (pos >= text.size() || text[pos] != ')') fail(entry_pos, "expected ')'");
        ++pos;
        entries.push_back(e);
    }
    if (entries.empty()) throw ParseError("no entries found");
    return entries;
}

}  // namespace

Instance parse_instance_text(std::string_view text, ListingForm form) {
    std::vector<Entry> entries = scan_entries(text);
    const int n = static_cast<int>(entries.size());
    if (n > kMaxMessages) throw ParseError("more than 64 messages");
    const Subset full = full_set(n);
    std::vector<Subset> listed(n, 0);
    std::vector<bool> seen(n, false);
    for (const Entry& e : entries) {
        if (e.index < 1 || e.index > n)
            fail(e.position, "message index " + std::to_string(e.index) +
                                 " out of range [1, " + std::to_string(n) + "]");
        int i = e.index - 1;
        if (seen[i])
            fail(e.position, "duplicate entry for message " + std::to_string(e.index));
        seen[i] = true;
        if (e.set & ~full)
            fail(e.position, "set member out of range [1, " + std::to_string(n) + "]");
        if (contains(e.set, i))
            fail(e.position, "message " + std::to_string(e.index) + " lists itself");
        listed[i] = e.set;
    }
    std::vector<Subset> side_info(n);
    for (int i = 0; i < n; ++i) {
        side_info[i] = form == ListingForm::kSideInfo
                           ? listed[i]
                           : full & ~(listed[i] | bit(i));
    }
    return Instance(n, std::move(side_info));
}

std::string render_instance_text(const Instance& inst, ListingForm form) {
    std::ostringstream os;
    for (int i = 0; i < inst.message_count(); ++i) {
        if (i) os << ", ";
        Subset s = form == ListingForm::kSideInfo ? inst.side_info(i)
                                                  : inst.interfering(i);
        os << '(' << i + 1 << '|';
        if (!s) {
            os << '-';
        } else {
            bool first = true;
            for (int v : to_external(s)) {
                if (!first) os << ',';
                os << v;
                first = false;
            }
        }
        os << ')';
    }
    return os.str();
}

bool is_acyclic_by_permutation(const Instance& inst, Subset s) {
    std::vector<int> verts = members(s);
    std::sort(verts.begin(), verts.end());
    do {
        // The order is topological iff every edge points forward: an edge
        // i->j exists when i is in side_info(j), so no vertex may know a
        // vertex placed after it.
        bool ok = true;
        Subset later = s;
        for (int v : verts) {
            later &= ~bit(v);
            if (inst.side_info(v) & later) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(verts.begin(), verts.end()));
    return false;
}

}  // namespace icb
