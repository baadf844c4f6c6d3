#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "icb/subset.hpp"

namespace icb {

// Raised for malformed instance text/JSON; the message names the offending
// entry position.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// How an instance listing describes each receiver: by what it knows
// (the paper's A-form, "(i|A_i)") or by what interferes with it
// (B-form, "(i|B_i)").
enum class ListingForm { kSideInfo, kInterfering };

// An index coding problem: n messages, receiver i knows side_info(i) and is
// interfered by interfering(i) = complement of side_info(i) plus i itself.
// Immutable after construction; safe to share across threads.
class Instance {
public:
    // side_info[i] must not contain i and must lie inside [n]. Throws
    // std::invalid_argument otherwise, and for n outside [1, 64].
    Instance(int n, std::vector<Subset> side_info);

    int message_count() const { return n_; }
    Subset all_messages() const { return full_set(n_); }

    // 0-based accessors.
    Subset side_info(int i) const { return side_info_[i]; }
    Subset interfering(int i) const { return interfering_[i]; }

    // True iff the side-information graph restricted to s (edge i->j iff
    // receiver j knows i) has no directed cycle. Empty sets and singletons
    // are acyclic.
    bool is_acyclic(Subset s) const;

    bool operator==(const Instance&) const = default;

private:
    int n_;
    std::vector<Subset> side_info_;
    std::vector<Subset> interfering_;
};

// Parses the paper's listing notation, e.g. "(1|-), (2|3), (3|2)".
// Entries may appear in any order but every index 1..n (n = entry count)
// must appear exactly once. Whitespace and trailing commas are ignored.
Instance parse_instance_text(std::string_view text, ListingForm form);

// Inverse of parse_instance_text; entries in index order.
std::string render_instance_text(const Instance& inst, ListingForm form);

// Reference cycle check used by tests: tries every permutation of the
// members of s looking for a topological order. |s| <= 8.
bool is_acyclic_by_permutation(const Instance& inst, Subset s);

}  // namespace icb
