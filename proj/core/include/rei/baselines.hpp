#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rei/instance.hpp"
#include "rei/regex.hpp"

namespace rei {

/// Right-nested concatenation of w's characters; e when w is empty.
Regex string_regex(std::string_view w);

/// Union-of-positives solution: a right-nested union over right-nested
/// concatenation encodings of the P strings in input order (the empty
/// string encodes as e). P = {} yields the empty set regex. Always precise
/// because P and N are disjoint.
Regex trivial(const Instance& inst);

/// Training instances with gold solutions, indexed for the two retrieval
/// baselines. build() re-checks every stored solution: it must parse under
/// its instance's alphabet and operator set and be precise for it.
class TrainCorpus {
 public:
  static TrainCorpus build(const std::vector<Instance>& train);

  std::size_t instance_count() const { return items_.size(); }
  std::size_t distinct_regex_count() const { return distinct_.size(); }

  struct Item {
    PNSet pn;
    Regex gold = Regex::empty_set();
    std::string printed;  // canonical form of gold
  };
  const std::vector<Item>& items() const { return items_; }
  const std::vector<Item>& distinct() const { return distinct_; }

 private:
  std::vector<Item> items_;
  std::vector<Item> distinct_;  // one entry per canonical regex text
};

/// Gold regex of the training instance with the largest labeled PN overlap
/// (|P ∩ P_train| + |N ∩ N_train|); ties prefer the lower cost under the
/// test instance's cost function, then the lexicographically smaller
/// canonical form.
Regex pn_retrieval(const Instance& inst, const TrainCorpus& corpus);

/// Among all distinct gold regexes of the corpus, the one classifying the
/// largest fraction of the test instance's strings correctly; ties prefer
/// lower cost under the test cost function, then canonical form.
Regex re_retrieval(const Instance& inst, const TrainCorpus& corpus);

}  // namespace rei
