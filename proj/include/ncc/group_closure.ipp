// Template closure builder; included from group.hpp.

namespace ncc {

namespace detail {

template <class E, class Hash, class Mul>
class ClosureEngine final : public MulEngine {
 public:
  ClosureEngine(std::vector<E> elems, std::unordered_map<E, Elem, Hash> index, Mul mul)
      : elems_(std::move(elems)), index_(std::move(index)), mul_(std::move(mul)) {}

  Elem mul(Elem a, Elem b) const override {
    auto it = index_.find(mul_(elems_[a], elems_[b]));
    if (it == index_.end()) throw std::logic_error("closure engine: product outside group");
    return it->second;
  }

 private:
  std::vector<E> elems_;
  std::unordered_map<E, Elem, Hash> index_;
  Mul mul_;
};

}  // namespace detail

template <class E, class Hash, class Mul>
FiniteGroup close_elements(const E& identity, const std::vector<E>& gens, Mul mul,
                           std::string label, std::vector<E>* elements_out) {
  const std::size_t cap = limits().order_cap;
  const std::size_t ng = gens.size();
  std::vector<E> elems{identity};
  std::unordered_map<E, Elem, Hash> index;
  index.emplace(identity, 0);
  std::vector<Elem> right;
  std::vector<Elem> parent{0};
  std::vector<std::uint32_t> via{0};
  for (std::size_t x = 0; x < elems.size(); ++x) {
    for (std::size_t s = 0; s < ng; ++s) {
      E y = mul(elems[x], gens[s]);
      auto [it, inserted] = index.emplace(std::move(y), static_cast<Elem>(elems.size()));
      if (inserted) {
        if (elems.size() >= cap) throw SizeError("closure of " + label, elems.size() + 1, cap);
        elems.push_back(it->first);
        parent.push_back(static_cast<Elem>(x));
        via.push_back(static_cast<std::uint32_t>(s));
      }
      right.push_back(it->second);
    }
  }
  std::vector<Elem> gen_idx;
  for (std::size_t s = 0; s < ng; ++s) gen_idx.push_back(right[s]);
  const std::size_t n = elems.size();
  if (elements_out) *elements_out = elems;
  std::shared_ptr<const MulEngine> engine;
  if (n > limits().dense_threshold) {
    engine = std::make_shared<detail::ClosureEngine<E, Hash, Mul>>(std::move(elems),
                                                                  std::move(index), mul);
  }
  return FiniteGroup::from_cayley_graph(n, std::move(gen_idx), right, parent, via,
                                        std::move(engine), std::move(label));
}

}  // namespace ncc
