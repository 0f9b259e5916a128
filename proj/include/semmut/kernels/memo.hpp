#pragma once

#include <map>
#include <memory>
#include <mutex>

namespace semmut::kernels {

// Thread-safe memo for trained models. Values are pure functions of the
// key, so eviction and races only cost recomputation.
template <class Key, class Value>
class Memo {
public:
    explicit Memo(std::size_t capacity = 512) : capacity_(capacity) {}

    template <class Make>
    std::shared_ptr<const Value> get(const Key& key, Make&& make) {
        {
            std::lock_guard lock(mutex_);
            auto it = entries_.find(key);
            if (it != entries_.end()) return it->second;
        }
        auto value = std::make_shared<const Value>(make());
        std::lock_guard lock(mutex_);
        if (entries_.size() >= capacity_) entries_.clear();
        entries_.emplace(key, value);
        return value;
    }

private:
    std::size_t capacity_;
    std::mutex mutex_;
    std::map<Key, std::shared_ptr<const Value>> entries_;
};

}  // namespace semmut::kernels
