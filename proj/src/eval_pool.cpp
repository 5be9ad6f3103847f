#include "nrpa/eval_pool.hpp"

#include <algorithm>

namespace nrpa {

EvalPool::EvalPool(unsigned workers) : workers_(std::max(1u, workers)) {
    threads_.reserve(workers_ - 1);
    for (unsigned i = 1; i < workers_; ++i) threads_.emplace_back([this] { workerLoop(); });
}

EvalPool::~EvalPool() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : threads_) t.join();
}

void EvalPool::run(std::size_t count, const std::function<void(std::size_t)>& task) {
    if (count == 0) return;
    if (threads_.empty()) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    {
        std::lock_guard lock(mutex_);
        task_ = &task;
        count_ = count;
        next_ = 0;
        finished_ = 0;
        error_ = nullptr;
        ++generation_;
    }
    wake_.notify_all();
    drain();

    std::unique_lock lock(mutex_);
    done_.wait(lock, [this] { return finished_ == count_; });
    task_ = nullptr;
    if (error_) std::rethrow_exception(error_);
}

// Claims indices until the current batch is exhausted.
void EvalPool::drain() {
    std::unique_lock lock(mutex_);
    while (task_ != nullptr && next_ < count_) {
        const std::size_t i = next_++;
        const auto* task = task_;
        lock.unlock();
        std::exception_ptr err;
        try {
            (*task)(i);
        } catch (...) {
            err = std::current_exception();
        }
        lock.lock();
        if (err && !error_) error_ = err;
        if (++finished_ == count_) done_.notify_all();
    }
}

void EvalPool::workerLoop() {
    std::size_t seen = 0;
    for (;;) {
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
        }
        drain();
    }
}

} // namespace nrpa
