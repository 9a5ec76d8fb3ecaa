#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace fbmgreeks::detail {

/// Read-mostly memo table. Values are immutable once published; concurrent
/// readers only take the shared lock.
template <class Key, class Value>
class ReadMostlyCache {
 public:
  template <class Factory>
  std::shared_ptr<const Value> get(const Key& key, Factory&& make) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto value = std::make_shared<const Value>(make());
    std::unique_lock lock(mutex_);
    return entries_.try_emplace(key, std::move(value)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const Value>> entries_;
};

}  // namespace fbmgreeks::detail
