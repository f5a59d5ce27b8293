/* C interface for the expoly library.
 *
 * All functions return a status code: EXPOLY_OK on success, otherwise one
 * of the EXPOLY_ERR_* codes, with a description available from
 * expoly_last_error_message() until the next failing call on the same
 * thread. Handles are opaque; every *_new/parse output must be released
 * with the matching *_free.
 */

#ifndef EXPOLY_H
#define EXPOLY_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define EXPOLY_OK 0
#define EXPOLY_ERR_SYNTAX 1
#define EXPOLY_ERR_MATH 2
#define EXPOLY_ERR_INVALID 3
#define EXPOLY_ERR_NULL 4

typedef struct ExpolyContext ExpolyContext;
typedef struct ExpolyExpr ExpolyExpr;

const char *expoly_last_error_message(void);

/* Scalar field Q(i)[sqrt radicand]; radicand must be square-free. */
int expoly_context_new(uint64_t radicand, ExpolyContext **out);
void expoly_context_free(ExpolyContext *ctx);

/* Expressions use the library text grammar, e.g. "1 + 4*exp(z)". */
int expoly_parse(const ExpolyContext *ctx, const char *text, ExpolyExpr **out);
int expoly_print(const ExpolyExpr *expr, char **out);
void expoly_expr_free(ExpolyExpr *expr);
void expoly_string_free(char *s);

int expoly_add(const ExpolyExpr *a, const ExpolyExpr *b, ExpolyExpr **out);
int expoly_sub(const ExpolyExpr *a, const ExpolyExpr *b, ExpolyExpr **out);
int expoly_mul(const ExpolyExpr *a, const ExpolyExpr *b, ExpolyExpr **out);
int expoly_differentiate(const ExpolyExpr *expr, ExpolyExpr **out);
int expoly_order(const ExpolyExpr *expr, size_t *out);
int expoly_evaluate(const ExpolyExpr *expr, double re, double im,
                    double *out_re, double *out_im);

/* Leading coefficient of the Nevanlinna characteristic T(r, f); for
 * polynomial input *degenerate_log_degree is set to the degree and the
 * growth is that many log r, otherwise it is -1. */
int expoly_characteristic_leading(const ExpolyExpr *expr, double *leading,
                                  int64_t *degenerate_log_degree);

int expoly_are_dual(const ExpolyExpr *f, const ExpolyExpr *g, int *out);
int expoly_are_strongly_dual(const ExpolyExpr *f, const ExpolyExpr *g, int *out);

/* Exact check of f'' + a f' + b f = 0. */
int expoly_is_second_order_solution(const ExpolyExpr *a, const ExpolyExpr *b,
                                    const ExpolyExpr *f, int *out);

#ifdef __cplusplus
}
#endif

#endif /* EXPOLY_H */
