// Addressable min pairing heap over dense integer ids [0, capacity).
//
// push / decrease-key / meld are O(1); pop and erase are O(log n) amortized.

#ifndef AMCFLOW_PAIRING_HEAP_H_
#define AMCFLOW_PAIRING_HEAP_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace amcflow {

template <typename Key, typename Less = std::less<Key>>
class PairingHeap {
 public:
  explicit PairingHeap(int capacity = 0) { Reset(capacity); }

  void Reset(int capacity) {
    keys_.assign(capacity, Key{});
    child_.assign(capacity, kNil);
    sibling_.assign(capacity, kNil);
    prev_.assign(capacity, kNil);
    in_heap_.assign(capacity, false);
    root_ = kNil;
    size_ = 0;
  }

  bool Empty() const { return root_ == kNil; }
  int Size() const { return size_; }
  bool Contains(int id) const { return in_heap_[id]; }
  const Key& KeyOf(int id) const { return keys_[id]; }
  int Top() const { return root_; }
  const Key& TopKey() const { return keys_[root_]; }

  // Number of push/decrease-key/pop/erase calls since construction.
  int64_t operations() const { return operations_; }

  void Push(int id, Key key) {
    if (in_heap_[id]) throw std::logic_error("PairingHeap::Push: id already present");
    ++operations_;
    keys_[id] = std::move(key);
    child_[id] = sibling_[id] = prev_[id] = kNil;
    in_heap_[id] = true;
    ++size_;
    root_ = Meld(root_, id);
  }

  void DecreaseKey(int id, Key key) {
    if (less_(keys_[id], key)) {
      throw std::logic_error("PairingHeap::DecreaseKey: key increased");
    }
    ++operations_;
    keys_[id] = std::move(key);
    if (id == root_) return;
    Detach(id);
    root_ = Meld(root_, id);
  }

  // Inserts `id` or lowers its key; returns true if the heap changed.
  bool PushOrDecrease(int id, const Key& key) {
    if (!in_heap_[id]) {
      Push(id, key);
      return true;
    }
    if (!less_(key, keys_[id])) return false;
    DecreaseKey(id, key);
    return true;
  }

  void Pop() { Erase(root_); }

  void Erase(int id) {
    if (!in_heap_[id]) throw std::logic_error("PairingHeap::Erase: id not present");
    ++operations_;
    in_heap_[id] = false;
    --size_;
    int sub = MergePairs(child_[id]);
    if (id == root_) {
      root_ = sub;
    } else {
      Detach(id);
      root_ = Meld(root_, sub);
    }
    child_[id] = sibling_[id] = prev_[id] = kNil;
  }

 private:
  static constexpr int kNil = -1;

  int Meld(int a, int b) {
    if (a == kNil) return b;
    if (b == kNil) return a;
    if (less_(keys_[b], keys_[a])) std::swap(a, b);
    // b becomes the leftmost child of a.
    sibling_[b] = child_[a];
    if (child_[a] != kNil) prev_[child_[a]] = b;
    prev_[b] = a;
    child_[a] = b;
    sibling_[a] = kNil;
    prev_[a] = kNil;
    return a;
  }

  // Unlinks a non-root node (with its subtree) from its parent's child list.
  void Detach(int id) {
    int p = prev_[id];
    if (child_[p] == id) {
      child_[p] = sibling_[id];
    } else {
      sibling_[p] = sibling_[id];
    }
    if (sibling_[id] != kNil) prev_[sibling_[id]] = p;
    sibling_[id] = prev_[id] = kNil;
  }

  // Standard two-pass pairing of a sibling list.
  int MergePairs(int first) {
    if (first == kNil) return kNil;
    scratch_.clear();
    for (int c = first; c != kNil;) {
      int next = sibling_[c];
      sibling_[c] = prev_[c] = kNil;
      scratch_.push_back(c);
      c = next;
    }
    size_t i = 0;
    std::vector<int> paired;
    paired.reserve(scratch_.size() / 2 + 1);
    for (; i + 1 < scratch_.size(); i += 2) {
      paired.push_back(Meld(scratch_[i], scratch_[i + 1]));
    }
    if (i < scratch_.size()) paired.push_back(scratch_[i]);
    int r = paired.back();
    for (int j = static_cast<int>(paired.size()) - 2; j >= 0; --j) {
      r = Meld(paired[j], r);
    }
    return r;
  }

  std::vector<Key> keys_;
  std::vector<int> child_, sibling_, prev_;
  std::vector<bool> in_heap_;
  std::vector<int> scratch_;
  int root_ = kNil;
  int size_ = 0;
  int64_t operations_ = 0;
  Less less_;
};

}  // namespace amcflow

#endif  // AMCFLOW_PAIRING_HEAP_H_
