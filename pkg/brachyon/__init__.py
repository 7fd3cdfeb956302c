# ABOUTME: Brachyon package
# ABOUTME: Skew braces and the non-degenerate set-theoretic Yang-Baxter solutions built from them
