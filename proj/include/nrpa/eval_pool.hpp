#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nrpa {

/// Fork-join pool for index-parallel loops. The calling thread takes part in
/// every batch, so a pool of one worker runs tasks inline in index order.
class EvalPool {
public:
    explicit EvalPool(unsigned workers);
    ~EvalPool();

    EvalPool(const EvalPool&) = delete;
    EvalPool& operator=(const EvalPool&) = delete;

    unsigned workers() const noexcept { return workers_; }

    /// Calls task(i) for i in [0, count) and waits for all of them. The first
    /// exception thrown by any task is rethrown here.
    void run(std::size_t count, const std::function<void(std::size_t)>& task);

private:
    void workerLoop();
    void drain();

    unsigned workers_;
    std::vector<std::thread> threads_;

    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(std::size_t)>* task_ = nullptr;
    std::size_t count_ = 0;
    std::size_t next_ = 0;
    std::size_t finished_ = 0;
    std::size_t generation_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

} // namespace nrpa
