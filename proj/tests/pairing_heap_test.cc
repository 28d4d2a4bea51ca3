#include "amcflow/pairing_heap.h"

#include <gtest/gtest.h>

#include <map>
#include <random>

namespace amcflow {
namespace {

TEST(PairingHeapTest, PopsInKeyOrder) {
  PairingHeap<int> heap(5);
  heap.Push(0, 7);
  heap.Push(1, 3);
  heap.Push(2, 9);
  heap.Push(3, 1);
  std::vector<int> order;
  while (!heap.Empty()) {
    order.push_back(heap.Top());
    heap.Pop();
  }
  EXPECT_EQ(order, (std::vector<int>{3, 1, 0, 2}));
}

TEST(PairingHeapTest, DecreaseKeyAndErase) {
  PairingHeap<int> heap(4);
  for (int i = 0; i < 4; ++i) heap.Push(i, 10 + i);
  heap.DecreaseKey(3, 5);
  EXPECT_EQ(heap.Top(), 3);
  heap.Erase(3);
  EXPECT_FALSE(heap.Contains(3));
  EXPECT_EQ(heap.Top(), 0);
  EXPECT_FALSE(heap.PushOrDecrease(1, 20));
  EXPECT_TRUE(heap.PushOrDecrease(1, 2));
  EXPECT_EQ(heap.Top(), 1);
  EXPECT_EQ(heap.Size(), 3);
}

TEST(PairingHeapTest, RejectsMisuse) {
  PairingHeap<int> heap(2);
  heap.Push(0, 1);
  EXPECT_THROW(heap.Push(0, 2), std::logic_error);
  EXPECT_THROW(heap.DecreaseKey(0, 5), std::logic_error);
  EXPECT_THROW(heap.Erase(1), std::logic_error);
}

TEST(PairingHeapTest, MatchesOrderedMapUnderRandomOperations) {
  std::mt19937_64 rng(7);
  const int n = 200;
  PairingHeap<int64_t> heap(n);
  std::map<int, int64_t> model;
  for (int step = 0; step < 20000; ++step) {
    int id = static_cast<int>(rng() % n);
    switch (rng() % 4) {
      case 0:
      case 1: {
        int64_t key = static_cast<int64_t>(rng() % 1000);
        bool changed = heap.PushOrDecrease(id, key);
        auto it = model.find(id);
        bool expect = it == model.end() || key < it->second;
        ASSERT_EQ(changed, expect);
        if (expect) model[id] = key;
        break;
      }
      case 2:
        if (model.count(id)) {
          heap.Erase(id);
          model.erase(id);
        }
        break;
      default:
        if (!model.empty()) {
          int64_t best = model.begin()->second;
          for (auto& [k, v] : model) best = std::min(best, v);
          ASSERT_EQ(heap.TopKey(), best);
          model.erase(heap.Top());
          heap.Pop();
        }
    }
    ASSERT_EQ(heap.Size(), static_cast<int>(model.size()));
  }
  EXPECT_GT(heap.operations(), 0);
}

}  // namespace
}  // namespace amcflow
