"""Services package for business logic layer."""
