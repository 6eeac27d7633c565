# Initializes the common_utils module 