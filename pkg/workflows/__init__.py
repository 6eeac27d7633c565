# Initializes the workflows module 