# Shared helpers: errors, settings, caching and result output
