"""Integration tests for the SmartTodo application."""
