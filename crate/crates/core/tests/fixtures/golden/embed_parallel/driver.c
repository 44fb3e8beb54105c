/* Generated by sptrsv-rewrite. Do not edit. */
#define _POSIX_C_SOURCE 199309L
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <time.h>

#define N 4

void level0_part0(double *restrict x);
void level1_part0(double *restrict x);
void level2_part0(double *restrict x);
void sptrsv_fallback(const double *b, double *x);
extern const double sptrsv_rhs[N];

static void solve(double *restrict x)
{
#pragma omp parallel
#pragma omp single
    {
        /* level 0 */
#pragma omp task
        level0_part0(x);
#pragma omp taskwait
        /* level 1 */
#pragma omp task
        level1_part0(x);
#pragma omp taskwait
        /* level 2 */
#pragma omp task
        level2_part0(x);
    }
}

static double now_ms(void)
{
    struct timespec ts;
    clock_gettime(CLOCK_MONOTONIC, &ts);
    return (double)ts.tv_sec * 1e3 + (double)ts.tv_nsec / 1e6;
}

int main(int argc, char **argv)
{
    double *b = malloc(N * sizeof *b);
    double *x = calloc(N, sizeof *x);
    double *ref = calloc(N, sizeof *ref);
    int reps = 1;
    if (!b || !x || !ref) {
        fprintf(stderr, "out of memory\n");
        return 1;
    }
    memcpy(b, sptrsv_rhs, N * sizeof *b);
    if (argc > 1)
        reps = atoi(argv[1]);
    if (reps < 1)
        reps = 1;

    double t0 = now_ms();
    for (int r = 0; r < reps; r++)
        solve(x);
    double elapsed = (now_ms() - t0) / reps;

    sptrsv_fallback(b, ref);
    double checksum = 0.0, scale = 1.0, err = 0.0;
    for (long i = 0; i < N; i++) {
        double a = ref[i] < 0 ? -ref[i] : ref[i];
        if (a > scale)
            scale = a;
        checksum += x[i];
    }
    for (long i = 0; i < N; i++) {
        double d = x[i] - ref[i];
        if (d < 0)
            d = -d;
        if (!(d <= err))
            err = d;
    }
    err /= scale;
    printf("checksum=%.17g\n", checksum);
    printf("time_ms=%.6f\n", elapsed);
    printf("selfcheck_max_rel_err=%.3e\n", err);
    free(b);
    free(x);
    free(ref);
    return err <= 1e-10 ? 0 : 2;
}
