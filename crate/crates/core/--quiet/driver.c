/* Generated by sptrsv-rewrite. Do not edit. */
#define _POSIX_C_SOURCE 199309L
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <time.h>

#define N 40

void level0_part0(double *restrict x, const double *restrict b);
void level1_part0(double *restrict x, const double *restrict b);
void level2_part0(double *restrict x, const double *restrict b);
void level3_part0(double *restrict x, const double *restrict b);
void level4_part0(double *restrict x, const double *restrict b);
void sptrsv_fallback(const double *b, double *x);

static void solve(double *restrict x, const double *restrict b)
{
#pragma omp parallel
#pragma omp single
    {
        /* level 0 */
#pragma omp task
        level0_part0(x, b);
#pragma omp taskwait
        /* level 1 */
#pragma omp task
        level1_part0(x, b);
#pragma omp taskwait
        /* level 2 */
#pragma omp task
        level2_part0(x, b);
#pragma omp taskwait
        /* level 3 */
#pragma omp task
        level3_part0(x, b);
#pragma omp taskwait
        /* level 4 */
#pragma omp task
        level4_part0(x, b);
    }
}

static double now_ms(void)
{
    struct timespec ts;
    clock_gettime(CLOCK_MONOTONIC, &ts);
    return (double)ts.tv_sec * 1e3 + (double)ts.tv_nsec / 1e6;
}


/* n little-endian IEEE-754 doubles */
static int read_rhs(const char *path, double *b)
{
    FILE *f = fopen(path, "rb");
    if (!f) {
        perror(path);
        return -1;
    }
    for (long i = 0; i < N; i++) {
        unsigned char buf[8];
        uint64_t bits = 0;
        if (fread(buf, 1, 8, f) != 8) {
            fprintf(stderr, "%s: expected %ld values\n", path, (long)N);
            fclose(f);
            return -1;
        }
        for (int k = 7; k >= 0; k--)
            bits = (bits << 8) | buf[k];
        memcpy(&b[i], &bits, sizeof bits);
    }
    fclose(f);
    return 0;
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
    if (argc < 2) {
        fprintf(stderr, "usage: %s <rhs.bin> [repetitions]\n", argv[0]);
        return 1;
    }
    if (read_rhs(argv[1], b) != 0)
        return 1;
    if (argc > 2)
        reps = atoi(argv[2]);
    if (reps < 1)
        reps = 1;

    double t0 = now_ms();
    for (int r = 0; r < reps; r++)
        solve(x, b);
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
