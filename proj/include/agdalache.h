/*
 * agdalache.h - C interface to the alache runtime.
 *
 * Every object handed to C is referenced through an AlHandle, an opaque
 * stable token that keeps the object alive until it is freed.  Handle value
 * 0 is the null handle, so zero-initialized handle arrays are safe.
 *
 * Futures are exported as a caller-owned array of two handles:
 *   future[0]  interrupt cell   (consumed by al_future_try_put_interrupt)
 *   future[1]  result cell      (read by al_future_get_*)
 *
 * Typical use:
 *
 *   AlHandle future[2];
 *   ec_increase_async(app, 5, future);
 *
 *   // either wait for the result and free both handles:
 *   int64_t value;
 *   al_future_get_int(future, &value);
 *   al_handle_free(future[0]);
 *   al_handle_free(future[1]);
 *
 *   // or interrupt (which frees future[0]) and free the result handle:
 *   al_future_try_put_interrupt(future[0]);
 *   al_handle_free(future[1]);
 *
 * All functions may be called from any thread, including threads the
 * library did not create.  al_init and al_exit must be serialized by the
 * caller.
 *
 * Status codes are stable across versions.
 */
#ifndef AGDALACHE_H
#define AGDALACHE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#  if defined(AGDALACHE_BUILDING)
#    define AL_API __declspec(dllexport)
#  else
#    define AL_API
#  endif
#else
#  define AL_API __attribute__((visibility("default")))
#endif

typedef void* AlHandle;            /* 0 is null */

#define AL_STATUS_OK                 0   /* also: future completed */
#define AL_STATUS_INTERRUPTED        1   /* al_future_get_* */
#define AL_STATUS_FIRST_ODD          1   /* ec_increment */
#define AL_STATUS_SECOND_ODD         2   /* ec_increment */
#define AL_STATUS_OVERFLOW           3   /* ec_increment: result leaves int64 range */
#define AL_STATUS_NULL_HANDLE        100
#define AL_STATUS_STALE_HANDLE       101
#define AL_STATUS_NOT_INITIALIZED    102
#define AL_STATUS_WRONG_HANDLE_KIND  103 /* handle refers to another kind of object */
#define AL_STATUS_NULL_ARGUMENT      104 /* required output pointer was NULL */
#define AL_STATUS_INTERNAL           105 /* resource exhaustion inside the library */

/* Runtime lifecycle.  Both are idempotent.  al_exit interrupts any running
 * futures, waits for their threads and releases handles still registered. */
AL_API void     al_init(void);
AL_API void     al_exit(void);

/* EvenCounter model.  Returns 0 if the runtime is not initialized. */
AL_API AlHandle ec_init_app(void);
AL_API int32_t  ec_increment(AlHandle app, int64_t delta, int64_t* out);
AL_API int32_t  ec_read(AlHandle app, int64_t* out);

/* Starts the 2-per-second background increase for duration_s seconds and
 * writes the future's handles to future_out.  Nothing is written on error. */
AL_API int32_t  ec_increase_async(AlHandle app, int32_t duration_s, AlHandle future_out[2]);

/* Blocking getters.  0 = completed (value written), 1 = interrupted (out
 * untouched).  They never free the handles. */
AL_API int32_t  al_future_get_int(AlHandle future[2], int64_t* out);
AL_API int32_t  al_future_get_unit(AlHandle future[2]);
AL_API int32_t  al_future_get_ptr(AlHandle future[2], void** out);

/* Non-blocking interrupt.  Always frees interrupt_handle.  Returns 1 if this
 * call filled the interrupt cell, 0 if it was already filled, or the negated
 * status code (-100 .. -105) on misuse or failure. */
AL_API int32_t  al_future_try_put_interrupt(AlHandle interrupt_handle);

/* Interrupts through the runtime's dispatch thread and blocks until the
 * future has resolved.  Frees future[0] like al_future_try_put_interrupt and
 * uses the same return convention.  Provided as the "full call" baseline for
 * benchmarking. */
AL_API int32_t  ec_interrupt_full(AlHandle future[2]);

AL_API int32_t  al_handle_free(AlHandle h);

/* Number of live handles.  Intended for leak checks. */
AL_API uint64_t al_handle_live_count(void);

/* Static string; the caller must not free it.  Negative codes map like
 * their absolute value. */
AL_API const char* al_error_message(int32_t code);

#ifdef __cplusplus
}
#endif

#endif /* AGDALACHE_H */
